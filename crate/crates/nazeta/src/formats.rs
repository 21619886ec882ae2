//! JSON and CSV formats. Rationals are written as `"p/q"` strings.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use nazeta_core::eis3::SL3Point;
use nazeta_core::lattice::Lattice;
use nazeta_core::stability::{Flag, Polygon};
use nazeta_core::tannaka::{MarkedPoint, ParabolicBundle};
use nazeta_core::{Complex, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| anyhow!("not a rational: {s:?}")),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => bail!("expected a \"p/q\" string, got {other}"),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

fn matrix_from_json(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>> {
    let rows = v.as_array().ok_or_else(|| anyhow!("{what} must be a list of rows"))?;
    rows.iter()
        .map(|row| {
            row.as_array().ok_or_else(|| anyhow!("{what} rows must be lists"))?.iter().map(parse_rational).collect()
        })
        .collect()
}

fn matrix_to_json(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(rational_to_json).collect())).collect())
}

/// `{"rank": r, "basis": [[...]]}` or `{"rank": r, "gram": [[...]]}`.
pub fn lattice_from_json(v: &Value) -> Result<Lattice> {
    let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(|| anyhow!("lattice needs an integer \"rank\""))?;
    let lattice = match (v.get("basis"), v.get("gram")) {
        (Some(b), None) => Lattice::from_basis(matrix_from_json(b, "basis")?)?,
        (None, Some(g)) => Lattice::from_gram(matrix_from_json(g, "gram")?)?,
        _ => bail!("lattice needs exactly one of \"basis\" and \"gram\""),
    };
    if lattice.rank() as u64 != rank {
        bail!("rank {rank} does not match the matrix (rank {})", lattice.rank());
    }
    Ok(lattice)
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    match l.basis() {
        Some(b) => json!({"rank": l.rank(), "basis": matrix_to_json(b)}),
        None => json!({"rank": l.rank(), "gram": matrix_to_json(l.gram())}),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PolygonWire {
    rank: usize,
    values: Vec<f64>,
}

pub fn polygon_from_json(v: &Value) -> Result<Polygon> {
    let w: PolygonWire = serde_json::from_value(v.clone()).context("polygon")?;
    let p = Polygon::new(w.values)?;
    if p.rank() != w.rank {
        bail!("polygon rank {} does not match its {} values", w.rank, p.values().len());
    }
    Ok(p)
}

pub fn polygon_to_json(p: &Polygon) -> Value {
    json!({"rank": p.rank(), "values": p.values()})
}

/// A flag is the list of its generator matrices.
pub fn flag_from_json(v: &Value) -> Result<Flag> {
    Ok(Flag { steps: serde_json::from_value(v.clone()).context("flag")? })
}

pub fn flag_to_json(f: &Flag) -> Value {
    json!(f.steps)
}

const POINT_KEYS: [(&str, MarkedPoint); 3] =
    [("inf", MarkedPoint::Infinity), ("one", MarkedPoint::One), ("zero", MarkedPoint::Zero)];

/// `{"rank": r, "degrees": [...], "weights": {"inf": [...], "one": [...], "zero": [...]}}`.
pub fn bundle_from_json(v: &Value) -> Result<ParabolicBundle> {
    let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(|| anyhow!("bundle needs an integer \"rank\""))?;
    let degrees: Vec<i64> = serde_json::from_value(v.get("degrees").cloned().unwrap_or(Value::Null))
        .context("bundle \"degrees\" must be a list of integers")?;
    let weights = v.get("weights").and_then(Value::as_object).ok_or_else(|| anyhow!("bundle needs \"weights\""))?;
    if let Some(k) = weights.keys().find(|k| !POINT_KEYS.iter().any(|(p, _)| p == k)) {
        bail!("unknown marked point {k:?}");
    }
    let mut ws: [Vec<Rational>; 3] = Default::default();
    for (i, (key, _)) in POINT_KEYS.iter().enumerate() {
        let list = weights.get(*key).and_then(Value::as_array).ok_or_else(|| anyhow!("weights need {key:?}"))?;
        ws[i] = list.iter().map(parse_rational).collect::<Result<_>>()?;
    }
    let b = ParabolicBundle::new(degrees, ws)?;
    if b.rank() as u64 != rank {
        bail!("rank {rank} does not match {} degrees", b.rank());
    }
    Ok(b)
}

pub fn bundle_to_json(b: &ParabolicBundle) -> Value {
    let weights: BTreeMap<&str, Value> = POINT_KEYS
        .iter()
        .map(|(k, p)| (*k, Value::Array(b.weights(*p).iter().map(rational_to_json).collect())))
        .collect();
    json!({"rank": b.rank(), "degrees": b.degrees(), "weights": weights})
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointWire {
    y1: f64,
    y2: f64,
    x1: f64,
    x2: f64,
    x3: f64,
}

pub fn sl3_point_from_json(v: &Value) -> Result<SL3Point> {
    let w: PointWire = serde_json::from_value(v.clone()).context("SL3 point")?;
    Ok(SL3Point::new(w.y1, w.y2, w.x1, w.x2, w.x3)?)
}

pub fn sl3_point_to_json(p: &SL3Point) -> Value {
    json!({"y1": p.y1, "y2": p.y2, "x1": p.x1, "x2": p.x2, "x3": p.x3})
}

pub fn complex_to_json(z: Complex) -> Value {
    json!({"re": z.re, "im": z.im})
}

/// Parses `"1.5"`, `"2i"`, `"-i"`, `"1.5+2i"`, `"1.5 - 2e-3i"`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || anyhow!("not a complex number: {text:?} (expected re+imi)");
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().map_err(|_| bad())?,
    };
    let re = if re.is_empty() { 0.0 } else { re.parse().map_err(|_| bad())? };
    Ok(Complex::new(re, im))
}

pub fn format_complex(z: Complex) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// One row of an `eis2` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub s_re: f64,
    pub s_im: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub abs_err_estimate: f64,
}

pub fn write_grid<W: std::io::Write>(out: W, rows: &[GridRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid<R: std::io::Read>(input: R) -> Result<Vec<GridRow>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(Into::into)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nazeta_core::tannaka::IrreducibleLibrary;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn complex_format_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }

        #[test]
        fn rational_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = Rational::new(n.into(), d.into());
            prop_assert_eq!(parse_rational(&rational_to_json(&r)).unwrap(), r);
        }
    }

    #[test]
    fn complex_strings() {
        let cases = [
            ("1.5", (1.5, 0.0)),
            ("1.5+2i", (1.5, 2.0)),
            (" 1.5 - 2i ", (1.5, -2.0)),
            ("-i", (0.0, -1.0)),
            ("i", (0.0, 1.0)),
            ("2i", (0.0, 2.0)),
            ("1e-3+2e-1i", (1e-3, 0.2)),
            ("-2.5e+1-1E-2i", (-25.0, -0.01)),
        ];
        for (text, (re, im)) in cases {
            assert_eq!(parse_complex(text).unwrap(), Complex::new(re, im), "{text}");
        }
        for bad in ["", "1+", "x", "1+2j", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
        let z = Complex::new(0.25, -3.5);
        assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }

    #[test]
    fn lattice_round_trip() {
        let v = json!({"rank": 2, "basis": [["1/2", "1/3"], ["0", "7/5"]]});
        let l = lattice_from_json(&v).unwrap();
        let back = lattice_from_json(&lattice_to_json(&l)).unwrap();
        assert_eq!(back, l);
        let g = json!({"rank": 2, "gram": [[2, "1/2"], ["1/2", 1]]});
        let l = lattice_from_json(&g).unwrap();
        assert_eq!(lattice_from_json(&lattice_to_json(&l)).unwrap(), l);
        assert!(lattice_from_json(&json!({"rank": 3, "gram": [[1]]})).is_err());
        assert!(lattice_from_json(&json!({"rank": 1, "gram": [["a"]]})).is_err());
    }

    #[test]
    fn bundle_round_trip() {
        for (_, b) in IrreducibleLibrary::s3().members() {
            let v = bundle_to_json(b);
            assert_eq!(&bundle_from_json(&v).unwrap(), b);
        }
        let v = json!({"rank": 1, "degrees": [0], "weights": {"inf": ["0"], "one": ["0"], "half": ["0"]}});
        assert!(bundle_from_json(&v).is_err());
    }

    #[test]
    fn polygon_flag_point_round_trip() {
        let p = Polygon::new(vec![0.0, 0.5, 0.0]).unwrap();
        assert_eq!(polygon_from_json(&polygon_to_json(&p)).unwrap(), p);
        let f = Flag { steps: vec![vec![vec![1, 0]], vec![vec![1, 0], vec![0, 1]]] };
        assert_eq!(flag_from_json(&flag_to_json(&f)).unwrap(), f);
        let y = SL3Point::new(1.5, 0.5, 0.1, -0.2, 0.3).unwrap();
        assert_eq!(sl3_point_from_json(&sl3_point_to_json(&y)).unwrap(), y);
    }

    #[test]
    fn grid_round_trip() {
        let rows =
            vec![GridRow { s_re: 2.0, s_im: 0.5, t: 1.5, value_re: 0.1, value_im: -0.2, abs_err_estimate: 1e-12 }];
        let mut buf = Vec::new();
        write_grid(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("s_re,s_im,T,value_re,value_im,abs_err_estimate\n"));
        assert_eq!(read_grid(&buf[..]).unwrap(), rows);
    }
}
