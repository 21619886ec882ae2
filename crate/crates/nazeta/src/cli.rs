//! Command-line interface.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nazeta_core::eis2::{
    eisenstein_direct, eisenstein_fourier, geo_truncated_integral_numeric, truncated_eisenstein, UpperHalfPoint,
};
use nazeta_core::eis3::{
    constant_term_numeric, constant_term_p0_formula, constant_term_p0_langlands, constant_term_pi_formula,
    constant_term_pi_langlands, fe_adjudicate, sl3_eisenstein_direct, xi_product, FlagTable, MaximalParabolic,
    Parabolic, SL3Point,
};
use nazeta_core::lattice::{minkowski_point, riemann_roch, theta_h0, theta_h1, Lattice};
use nazeta_core::stability::{
    arthur_correspondence_rank2, canonical_filtration, canonical_polygon, is_semistable, quotient_slopes,
    truncation_indicator,
};
use nazeta_core::tannaka::{fusion_table, IrreducibleLibrary};
use nazeta_core::zeta::{
    residue_at, volume_d_t, volume_d_t_quadrature, zeta_rank1_numeric, zeta_rank2, zeta_rank2_numeric,
};
use nazeta_core::{Complex, NumericsConfig};
use serde_json::{json, Value};

use crate::config::load_config;
use crate::formats::{
    bundle_from_json, bundle_to_json, complex_to_json, flag_to_json, format_complex, lattice_from_json, parse_complex,
    polygon_from_json, polygon_to_json, rational_to_json, sl3_point_from_json, write_grid, GridRow,
};
use crate::report::Report;
use crate::suites::run_suite;

#[derive(Debug, Parser)]
#[command(name = "nazeta", version, about = "Non-abelian zeta functions of lattices and Eisenstein series")]
struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cohomology, degree and reduction of a lattice.
    Lattice {
        #[arg(value_enum)]
        op: LatticeOp,
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
    },
    /// Semistability, canonical polygons and truncation.
    Stability {
        #[command(subcommand)]
        op: StabilityOp,
    },
    /// SL2 Eisenstein series.
    Eis2 {
        #[command(subcommand)]
        op: Eis2Op,
    },
    /// Rank-1 and rank-2 zeta functions.
    Zeta {
        #[command(subcommand)]
        op: ZetaOp,
    },
    /// SL3 Eisenstein series by direct coset summation.
    Eis3(Eis3Args),
    /// Parabolic bundles on P1 with three marked points.
    Tannaka {
        #[command(subcommand)]
        op: TannakaOp,
    },
    /// Run acceptance suites and write a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Report path; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LatticeOp {
    H0,
    H1,
    RiemannRoch,
    Degree,
    Minimal,
    Minkowski,
}

#[derive(Debug, Args)]
struct LatticeInput {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum StabilityOp {
    Semistable(LatticeInput),
    Polygon(LatticeInput),
    Filtration(LatticeInput),
    /// Slopes of the canonical filtration's quotients.
    Slopes(LatticeInput),
    /// 1 iff the canonical polygon lies below the given polygon.
    Truncation {
        #[command(flatten)]
        lattice: LatticeInput,
        #[arg(long, value_name = "PATH")]
        polygon: PathBuf,
    },
    /// Both sides of the rank-2 polygon/height correspondence.
    Arthur {
        #[command(flatten)]
        lattice: LatticeInput,
        #[arg(long = "t")]
        t: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Eis2Method {
    Direct,
    Fourier,
    Truncated,
}

#[derive(Debug, Subcommand)]
enum Eis2Op {
    /// Completed Eisenstein series at x + iy.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s: Complex,
        #[arg(long, value_enum, default_value = "fourier")]
        method: Eis2Method,
        /// Truncation parameter for the truncated method.
        #[arg(long = "t")]
        t: Option<f64>,
    },
    /// CSV grid of the truncated integral over D_T.
    Grid {
        #[arg(long, value_parser = complex_arg, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        s: Vec<Complex>,
        #[arg(long = "t", value_delimiter = ',', required = true)]
        t: Vec<f64>,
        /// CSV path; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum ZetaOp {
    Rank1 {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s: Complex,
    },
    Rank2 {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s: Complex,
        /// Integrate over the moduli space instead of using the closed form.
        #[arg(long)]
        numeric: bool,
    },
    /// Contour residue of the rank-2 zeta function.
    Residue {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        at: Complex,
    },
    /// Hyperbolic area of D_T.
    Volume {
        #[arg(long = "t")]
        t: f64,
        #[arg(long)]
        quadrature: bool,
    },
}

#[derive(Debug, Args)]
struct Eis3Args {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    s: Complex,
    #[arg(long = "t", value_parser = complex_arg, allow_hyphen_values = true)]
    t: Complex,
    /// Coset height; the configured `sl3_height` when omitted.
    #[arg(long)]
    height: Option<u32>,
    /// JSON SL3 point; the identity when omitted.
    #[arg(long, value_name = "PATH")]
    point: Option<PathBuf>,
    /// JSON output path; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Include the functional-equation adjudication.
    #[arg(long)]
    fe: bool,
    /// Include printed, Weyl-group and numeric constant terms.
    #[arg(long)]
    constant_terms: bool,
}

#[derive(Debug, Subcommand)]
enum TannakaOp {
    /// Tensor product of two JSON bundles.
    Tensor {
        #[arg(long, value_name = "PATH")]
        a: PathBuf,
        #[arg(long, value_name = "PATH")]
        b: PathBuf,
    },
    /// Fusion table of the S3 library.
    Fusion,
}

fn complex_arg(s: &str) -> Result<Complex, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// Failure kinds mapped to exit codes.
enum Outcome {
    Ok,
    ChecksFailed,
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = cli
        .config
        .as_deref()
        .map_or_else(|| Ok(NumericsConfig::default()), |p| load_config(p).map_err(Into::into))
        .and_then(|cfg| execute(cli.command, &cfg));
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::ChecksFailed) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn read_lattice(path: &Path) -> Result<Lattice> {
    lattice_from_json(&read_json(path)?).with_context(|| format!("lattice in {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON serializes") + "\n"
}

fn execute(command: Command, cfg: &NumericsConfig) -> Result<Outcome> {
    match command {
        Command::Lattice { op, input } => lattice(op, &read_lattice(&input)?, cfg)?,
        Command::Stability { op } => stability(op, cfg)?,
        Command::Eis2 { op } => eis2(op, cfg)?,
        Command::Zeta { op } => zeta(op, cfg)?,
        Command::Eis3(args) => eis3(args, cfg)?,
        Command::Tannaka { op } => tannaka(op)?,
        Command::Verify { suite, json, no_timestamp } => return verify(&suite, json.as_deref(), no_timestamp, cfg),
    }
    Ok(Outcome::Ok)
}

fn lattice(op: LatticeOp, l: &Lattice, cfg: &NumericsConfig) -> Result<()> {
    match op {
        LatticeOp::H0 => println!("{}", theta_h0(l, cfg)?),
        LatticeOp::H1 => println!("{}", theta_h1(l, cfg)?),
        LatticeOp::Degree => println!("{}", l.degree()),
        LatticeOp::RiemannRoch => {
            let r = riemann_roch(l, cfg)?;
            print!("{}", pretty(&json!({"h0": r.h0, "h1": r.h1, "degree": r.degree, "rr_defect": r.rr_defect})));
        }
        LatticeOp::Minimal => {
            let (norm, vectors) = l.minimal_vectors(cfg)?;
            print!("{}", pretty(&json!({"norm": rational_to_json(&norm), "vectors": vectors})));
        }
        LatticeOp::Minkowski => {
            let m = minkowski_point(l)?;
            print!("{}", pretty(&json!({"x": m.z.x, "y": m.z.y, "scale": m.scale})));
        }
    }
    Ok(())
}

fn stability(op: StabilityOp, cfg: &NumericsConfig) -> Result<()> {
    match op {
        StabilityOp::Semistable(i) => println!("{}", is_semistable(&read_lattice(&i.input)?, cfg)?),
        StabilityOp::Polygon(i) => {
            print!("{}", pretty(&polygon_to_json(&canonical_polygon(&read_lattice(&i.input)?, cfg)?)))
        }
        StabilityOp::Filtration(i) => {
            print!("{}", pretty(&flag_to_json(&canonical_filtration(&read_lattice(&i.input)?, cfg)?)))
        }
        StabilityOp::Slopes(i) => {
            let l = read_lattice(&i.input)?;
            print!("{}", pretty(&json!(quotient_slopes(&l, &canonical_filtration(&l, cfg)?)?)));
        }
        StabilityOp::Truncation { lattice, polygon } => {
            let p = polygon_from_json(&read_json(&polygon)?)?;
            println!("{}", truncation_indicator(&read_lattice(&lattice.input)?, &p, cfg)?);
        }
        StabilityOp::Arthur { lattice, t } => {
            let (polygon_side, height_side) = arthur_correspondence_rank2(&read_lattice(&lattice.input)?, t, cfg)?;
            print!("{}", pretty(&json!({"polygon": polygon_side, "height": height_side})));
        }
    }
    Ok(())
}

fn eis2(op: Eis2Op, cfg: &NumericsConfig) -> Result<()> {
    match op {
        Eis2Op::Eval { x, y, s, method, t } => {
            let z = UpperHalfPoint::new(x, y)?;
            let v = match (method, t) {
                (Eis2Method::Direct, None) => eisenstein_direct(z, s, cfg)?,
                (Eis2Method::Fourier, None) => eisenstein_fourier(z, s, cfg)?,
                (Eis2Method::Truncated, Some(t)) => truncated_eisenstein(z, s, t, cfg)?,
                (Eis2Method::Truncated, None) => bail!("--method truncated needs --t"),
                (_, Some(_)) => bail!("--t only applies to --method truncated"),
            };
            println!("{}", format_complex(v));
        }
        Eis2Op::Grid { s, t, out } => {
            let mut rows = Vec::new();
            for &sv in &s {
                for &tv in &t {
                    let q = geo_truncated_integral_numeric(sv, tv, cfg)
                        .with_context(|| format!("s = {}, T = {tv}", format_complex(sv)))?;
                    rows.push(GridRow {
                        s_re: sv.re,
                        s_im: sv.im,
                        t: tv,
                        value_re: q.value.re,
                        value_im: q.value.im,
                        abs_err_estimate: q.error_estimate,
                    });
                }
            }
            let mut buf = Vec::new();
            write_grid(&mut buf, &rows)?;
            emit(out.as_deref(), std::str::from_utf8(&buf)?)?;
        }
    }
    Ok(())
}

fn zeta(op: ZetaOp, cfg: &NumericsConfig) -> Result<()> {
    match op {
        ZetaOp::Rank1 { s } => println!("{}", format_complex(zeta_rank1_numeric(s, cfg)?)),
        ZetaOp::Rank2 { s, numeric: false } => println!("{}", format_complex(zeta_rank2(s, cfg)?)),
        ZetaOp::Rank2 { s, numeric: true } => {
            let q = zeta_rank2_numeric(s, cfg)?;
            print!("{}", pretty(&json!({"value": complex_to_json(q.value), "abs_err_estimate": q.error_estimate})));
        }
        ZetaOp::Residue { at } => println!("{}", format_complex(residue_at(|s| zeta_rank2(s, cfg), at)?)),
        ZetaOp::Volume { t, quadrature } => {
            println!("{}", if quadrature { volume_d_t_quadrature(t, cfg)? } else { volume_d_t(t)? })
        }
    }
    Ok(())
}

fn eis3(a: Eis3Args, cfg: &NumericsConfig) -> Result<()> {
    let point = match &a.point {
        Some(p) => sl3_point_from_json(&read_json(p)?).with_context(|| format!("point in {}", p.display()))?,
        None => SL3Point::identity(),
    };
    let height = a.height.unwrap_or(cfg.sl3_height);
    let series = sl3_eisenstein_direct(&point, a.s, a.t, height, cfg)?;
    let xp = xi_product(a.s, a.t, cfg)?;
    let mut out = json!({
        "s": format_complex(a.s),
        "t": format_complex(a.t),
        "height": height,
        "value": complex_to_json(series.value),
        "completed": complex_to_json(series.value * xp),
        "abs_err_estimate": series.estimate,
        "flags": series.flags,
    });
    if a.constant_terms {
        let table = FlagTable::build(height, cfg)?;
        let mut terms = serde_json::Map::new();
        for (name, p) in [("P0", Parabolic::P0), ("P1", Parabolic::P1), ("P2", Parabolic::P2)] {
            let (printed, derived) = match p {
                Parabolic::P0 => (
                    constant_term_p0_formula(&point, a.s, a.t, cfg)?,
                    constant_term_p0_langlands(&point, a.s, a.t, cfg)?,
                ),
                Parabolic::P1 | Parabolic::P2 => {
                    let m = if p == Parabolic::P1 { MaximalParabolic::P1 } else { MaximalParabolic::P2 };
                    (
                        constant_term_pi_formula(&point, a.s, a.t, m, cfg)?,
                        constant_term_pi_langlands(&point, a.s, a.t, m, cfg)?,
                    )
                }
            };
            let numeric = constant_term_numeric(&point, a.s, a.t, p, &table, cfg)?.scaled(xp);
            let rel = |f: Complex| (f - numeric.value).norm() / numeric.value.norm();
            terms.insert(
                name.into(),
                json!({
                    "numeric": complex_to_json(numeric.value),
                    "numeric_abs_err_estimate": numeric.estimate,
                    "printed": complex_to_json(printed),
                    "printed_rel_dev": rel(printed),
                    "weyl": complex_to_json(derived),
                    "weyl_rel_dev": rel(derived),
                }),
            );
        }
        out["constant_terms"] = Value::Object(terms);
    }
    if a.fe {
        let r = fe_adjudicate(a.s, a.t, &point, cfg)?;
        let opt = |z: Option<Complex>| z.map_or(Value::Null, complex_to_json);
        let entries: Vec<Value> = r
            .entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label,
                    "s": format_complex(e.s),
                    "t": format_complex(e.t),
                    "printed": opt(e.printed),
                    "printed_deviation": e.printed_deviation,
                    "weyl": opt(e.langlands),
                    "weyl_deviation": e.langlands_deviation,
                    "error": e.error.as_ref().map(ToString::to_string),
                })
            })
            .collect();
        out["functional_equations"] = json!({
            "printed": complex_to_json(r.printed),
            "weyl": complex_to_json(r.langlands),
            "entries": entries,
        });
    }
    emit(a.report.as_deref(), &pretty(&out))
}

fn tannaka(op: TannakaOp) -> Result<()> {
    match op {
        TannakaOp::Tensor { a, b } => {
            let x = bundle_from_json(&read_json(&a)?).with_context(|| format!("bundle in {}", a.display()))?;
            let y = bundle_from_json(&read_json(&b)?).with_context(|| format!("bundle in {}", b.display()))?;
            print!("{}", pretty(&bundle_to_json(&x.tensor(&y))));
        }
        TannakaOp::Fusion => {
            let lib = IrreducibleLibrary::s3();
            let table = fusion_table(&lib)?;
            let mut out = serde_json::Map::new();
            for (i, (a, _)) in lib.members().iter().enumerate() {
                for (j, (b, _)) in lib.members().iter().enumerate() {
                    let terms: Vec<Value> =
                        table[i][j].iter().map(|(n, m)| json!({"member": n, "multiplicity": m})).collect();
                    out.insert(format!("{a} (x) {b}"), Value::Array(terms));
                }
            }
            print!("{}", pretty(&Value::Object(out)));
        }
    }
    Ok(())
}

fn verify(suite: &str, path: Option<&Path>, no_timestamp: bool, cfg: &NumericsConfig) -> Result<Outcome> {
    let checks = run_suite(suite, cfg)?;
    let timestamp = if no_timestamp {
        None
    } else {
        Some(SystemTime::now().duration_since(UNIX_EPOCH).map_err(|e| anyhow!(e))?.as_secs())
    };
    let report = Report { suite: suite.to_string(), timestamp, checks };
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: abs_err {:e}, tol {:e} {}", c.check, c.abs_err, c.tol, c.notes);
    }
    emit(path, &report.to_json())?;
    Ok(if report.passed() { Outcome::Ok } else { Outcome::ChecksFailed })
}
