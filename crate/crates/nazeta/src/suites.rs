//! Verification suites, one per acceptance criterion.

use std::f64::consts::PI;

use anyhow::{bail, Result};
use nazeta_core::eis2::{
    closed_form_it, eisenstein_direct, eisenstein_fourier, geo_truncated_integral_numeric, truncated_eisenstein,
    UpperHalfPoint,
};
use nazeta_core::eis3::{
    constant_term_numeric, constant_term_p0_formula, constant_term_p0_langlands, constant_term_pi_formula,
    constant_term_pi_langlands, xi_product, FlagTable, MaximalParabolic, Parabolic, SL3Point,
};
use nazeta_core::lattice::riemann_roch;
use nazeta_core::numerics::{xi_completed, GaussLegendre};
use nazeta_core::stability::{
    arthur_correspondence_rank2, canonical_filtration, canonical_polygon, flag_polygon, parabolic_sum_indicator_rank2,
    quotient_slopes, truncation_indicator, Polygon,
};
use nazeta_core::tannaka::{decompose, fusion_table, matches_s3, IrreducibleLibrary};
use nazeta_core::zeta::{residue_at, volume_d_t, volume_d_t_quadrature, zeta_rank1_numeric, zeta_rank2};
use nazeta_core::{Complex, NumericsConfig};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use crate::formats::format_complex;
use crate::random;
use crate::report::Check;

pub struct Suite {
    pub name: &'static str,
    pub criterion: u8,
    pub title: &'static str,
    run: fn(&NumericsConfig) -> Vec<Check>,
}

impl Suite {
    pub fn run(&self, cfg: &NumericsConfig) -> Vec<Check> {
        (self.run)(cfg)
    }
}

pub const SUITES: &[Suite] = &[
    Suite { name: "riemann-roch", criterion: 1, title: "Poisson summation and Riemann-Roch", run: riemann_roch_suite },
    Suite { name: "rank1-zeta", criterion: 2, title: "rank-1 zeta against xi", run: rank1_suite },
    Suite { name: "geo-truncation", criterion: 3, title: "geometric vs analytic truncation", run: geo_suite },
    Suite { name: "rank2-fe", criterion: 4, title: "rank-2 zeta functional equation", run: rank2_fe_suite },
    Suite { name: "residues", criterion: 5, title: "rank-2 residues and area of D_1", run: residue_suite },
    Suite { name: "fourier", criterion: 6, title: "Fourier vs direct SL2 Eisenstein series", run: fourier_suite },
    Suite { name: "idempotency", criterion: 7, title: "constant term of the truncated series", run: idempotency_suite },
    Suite { name: "hn", criterion: 8, title: "canonical polygons and filtrations", run: hn_suite },
    Suite { name: "indicator", criterion: 9, title: "rank-2 parabolic-sum indicator", run: indicator_suite },
    Suite { name: "arthur", criterion: 10, title: "rank-2 polygon/height correspondence", run: arthur_suite },
    Suite { name: "sl3", criterion: 11, title: "SL3 coordinates, coset sum and constant terms", run: sl3_suite },
    Suite { name: "tannaka", criterion: 12, title: "S3 parabolic bundles", run: tannaka_suite },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs one suite, or every suite in declaration order for `"all"`.
pub fn run_suite(name: &str, cfg: &NumericsConfig) -> Result<Vec<Check>> {
    if name == "all" {
        return Ok(SUITES.iter().flat_map(|s| s.run(cfg)).collect());
    }
    match suite(name) {
        Some(s) => Ok(s.run(cfg)),
        None => bail!(
            "unknown suite {name:?}; expected one of all, {}",
            SUITES.iter().map(|s| s.name).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

fn complex_check(name: String, lhs: Complex, rhs: Complex, tol: f64) -> Check {
    let err = (lhs - rhs).norm();
    Check::new(name, format_complex(lhs).into(), format_complex(rhs).into(), err, tol, err < tol)
}

fn or_error(name: String, r: nazeta_core::Result<Check>) -> Check {
    r.unwrap_or_else(|e| Check::error(name, e))
}

/// Tracks a maximum error and failures over a sample loop.
#[derive(Default)]
struct Sampler {
    max_err: f64,
    violations: usize,
    errors: usize,
    first_error: Option<String>,
}

impl Sampler {
    fn error(&mut self, e: impl std::fmt::Display) {
        self.errors += 1;
        self.first_error.get_or_insert_with(|| e.to_string());
    }

    fn notes(&self, samples: usize) -> String {
        let mut n = format!("{samples} samples");
        if self.errors > 0 {
            n += &format!(", {} evaluation errors (first: {})", self.errors, self.first_error.as_deref().unwrap_or(""));
        }
        n
    }

    fn bound_check(&self, name: &str, tol: f64, samples: usize) -> Check {
        let mut c = Check::bound(name, self.max_err, tol).with_notes(self.notes(samples));
        c.pass &= self.errors == 0;
        c
    }

    fn exact_check(&self, name: &str, samples: usize) -> Check {
        let mut c = Check::exact(name, self.violations, samples);
        c.notes = self.notes(samples);
        c.pass &= self.errors == 0;
        c
    }
}

fn riemann_roch_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(1);
    let mut s = Sampler::default();
    let n = 200;
    for i in 0..n {
        let l = random::lattice(&mut rng, 1 + i % 3);
        match riemann_roch(&l, cfg) {
            Ok(r) => s.max_err = s.max_err.max((r.h0 - r.h1 - r.degree).abs()),
            Err(e) => s.error(e),
        }
    }
    vec![s.bound_check("riemann-roch: max |h0 - h1 - deg|, ranks 1-3", 1e-9, n)]
}

fn rank1_suite(cfg: &NumericsConfig) -> Vec<Check> {
    [c(2.0), c(3.0), Complex::new(2.0, 1.0)]
        .into_iter()
        .map(|s| {
            let name = format!("rank1-zeta: numeric vs xi at s = {}", format_complex(s));
            or_error(
                name.clone(),
                (|| Ok(complex_check(name, zeta_rank1_numeric(s, cfg)?, xi_completed(s, cfg)?, 1e-6)))(),
            )
        })
        .collect()
}

fn geo_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for s in [c(1.5), c(2.0), c(2.5), Complex::new(1.5, 2.0)] {
        for t in [1.0, 1.5, 3.0] {
            let name = format!("geo-truncation: s = {}, T = {t}", format_complex(s));
            out.push(or_error(
                name.clone(),
                (|| {
                    let q = geo_truncated_integral_numeric(s, t, cfg)?;
                    Ok(complex_check(name, q.value, closed_form_it(s, t, cfg)?, 1e-6)
                        .with_notes(format!("quadrature refinement estimate {:.3e}", q.error_estimate)))
                })(),
            ));
        }
    }
    out
}

fn rank2_fe_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut s = Sampler::default();
    let mut n = 0;
    for sigma in [-1.2, 0.2, 0.7, 1.6, 2.5] {
        for tau in [0.0, 0.8, 2.5, 6.0] {
            n += 1;
            let z = Complex::new(sigma, tau);
            match (zeta_rank2(z, cfg), zeta_rank2(1.0 - z, cfg)) {
                (Ok(a), Ok(b)) => s.max_err = s.max_err.max((a - b).norm()),
                (Err(e), _) | (_, Err(e)) => s.error(e),
            }
        }
    }
    vec![s.bound_check("rank2-fe: max |xi2(s) - xi2(1 - s)| on a 5 x 4 grid", 1e-10, n)]
}

fn residue_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let expected = PI / 6.0 - 0.5;
    let area = PI / 3.0 - 1.0;
    let residue = |s0: f64| residue_at(|s| zeta_rank2(s, cfg), c(s0));
    let mut out = Vec::new();
    let r1 = residue(1.0);
    let r0 = residue(0.0);
    let same = "the closed form forces opposite-sign residues at 0 and 1, not the same residue";
    out.push(match &r1 {
        Ok(r) => complex_check("residues: Res_{s=1} = pi/6 - 1/2".into(), *r, c(expected), 1e-6),
        Err(e) => Check::error("residues: Res_{s=1} = pi/6 - 1/2", e),
    });
    out.push(match &r0 {
        Ok(r) => complex_check("residues: Res_{s=0} = -(pi/6 - 1/2)".into(), *r, c(-expected), 1e-6).with_notes(same),
        Err(e) => Check::error("residues: Res_{s=0} = -(pi/6 - 1/2)", e),
    });
    out.push(or_error(
        "residues: area(D_1) = pi/3 - 1".into(),
        (|| Ok(Check::close("residues: area(D_1) = pi/3 - 1", volume_d_t(1.0)?, area, 1e-12)))(),
    ));
    out.push(or_error(
        "residues: area(D_1) by quadrature".into(),
        (|| Ok(Check::close("residues: area(D_1) by quadrature", volume_d_t_quadrature(1.0, cfg)?, area, 1e-8)))(),
    ));
    out.push(match &r1 {
        Ok(r) => Check::close("residues: Res_{s=1} / area(D_1) = 1/2", r.re / area, 0.5, 1e-6)
            .with_notes("normalization factor 1/2 recorded, not resolved"),
        Err(e) => Check::error("residues: Res_{s=1} / area(D_1) = 1/2", e),
    });
    out
}

fn fourier_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut s = Sampler::default();
    let n = 10;
    for k in 0..n {
        let sv = Complex::new(2.0 + 2.0 * k as f64 / 9.0, [0.0, 1.5, -4.0][k % 3]);
        let z = UpperHalfPoint::new(-0.4 + 0.09 * k as f64, 0.6 + 0.2 * k as f64);
        let r = z.and_then(|z| Ok((eisenstein_fourier(z, sv, cfg)?, eisenstein_direct(z, sv, cfg)?)));
        match r {
            Ok((a, b)) => s.max_err = s.max_err.max((a - b).norm()),
            Err(e) => s.error(e),
        }
    }
    vec![s.bound_check("fourier: max |Fourier - direct|, Re(s) in [2, 4]", 1e-8, n)]
}

fn idempotency_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let rule = GaussLegendre::new(64);
    let mut s = Sampler::default();
    let mut n = 0;
    for sv in [c(2.0), Complex::new(1.5, 2.0), Complex::new(0.3, 1.0), c(-0.7)] {
        for t in [1.0, 2.0] {
            for y in [t + 0.25, 2.0 * t] {
                n += 1;
                let mut total = c(0.0);
                let mut failed = None;
                for (x, w) in rule.mapped(0.0, 1.0) {
                    match UpperHalfPoint::new(x, y).and_then(|z| truncated_eisenstein(z, sv, t, cfg)) {
                        Ok(v) => total += v * w,
                        Err(e) => failed = Some(e),
                    }
                }
                match failed {
                    Some(e) => s.error(e),
                    None => s.max_err = s.max_err.max(total.norm()),
                }
            }
        }
    }
    vec![s.bound_check("idempotency: max |int_0^1 E_T(x + iy; s) dx| for y > T", 1e-8, n)]
}

fn hn_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(8);
    let tol = 1e-9;
    let mut run = |rank_of: &dyn Fn(usize) -> usize, count: usize| {
        let (mut convex, mut dominated, mut slopes) = (Sampler::default(), Sampler::default(), Sampler::default());
        let mut flags = 0;
        for i in 0..count {
            let l = random::lattice(&mut rng, rank_of(i));
            let r: nazeta_core::Result<()> = (|| {
                let p = canonical_polygon(&l, cfg)?;
                if !p.is_convex(tol) {
                    convex.violations += 1;
                }
                let q = quotient_slopes(&l, &canonical_filtration(&l, cfg)?)?;
                if q.windows(2).any(|w| w[0] <= w[1]) {
                    slopes.violations += 1;
                }
                for _ in 0..50 {
                    let f = random::flag(&mut rng, l.rank());
                    let fp = flag_polygon(&l, &f)?;
                    flags += 1;
                    if fp.values().iter().zip(p.values()).any(|(a, b)| *a > b + tol) {
                        dominated.violations += 1;
                    }
                }
                Ok(())
            })();
            if let Err(e) = r {
                convex.error(&e);
                dominated.error(&e);
                slopes.error(e);
            }
        }
        (convex, dominated, slopes, flags)
    };
    let (convex, dominated, slopes, flags) = run(&|i| 2 + i % 2, 100);
    let mut out = vec![
        convex.exact_check("hn: canonical polygon convex, ranks 2-3", 100),
        dominated.exact_check("hn: canonical polygon dominates random flag polygons, ranks 2-3", flags),
        slopes.exact_check("hn: canonical filtration slopes strictly decreasing, ranks 2-3", 100),
    ];
    let (convex, dominated, slopes, flags) = run(&|_| 4, 20);
    let failures = convex.errors;
    let mut best_effort = Check::exact(
        "hn: rank 4 (best effort) convexity, dominance and slopes",
        convex.violations + dominated.violations + slopes.violations,
        flags,
    );
    best_effort = best_effort.with_notes(format!("{} of 20 lattices completed", 20 - failures));
    out.push(best_effort);
    out
}

fn indicator_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(9);
    let (mut eq, mut lines) = (Sampler::default(), Sampler::default());
    let n = 300;
    for _ in 0..n {
        let l = random::lattice(&mut rng, 2);
        let p = Polygon::new(vec![0.0, rng.gen_range(0.0..1.5), 0.0]).expect("valid polygon");
        match (parabolic_sum_indicator_rank2(&l, &p, cfg), truncation_indicator(&l, &p, cfg)) {
            (Ok(a), Ok(b)) => {
                if a.value != i64::from(b) {
                    eq.violations += 1;
                }
                if a.destabilizing_lines > 1 {
                    lines.violations += 1;
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                eq.error(&e);
                lines.error(e);
            }
        }
    }
    vec![
        eq.exact_check("indicator: parabolic sum equals truncation indicator", n),
        lines.exact_check("indicator: at most one destabilizing line", n),
    ]
}

fn arthur_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(10);
    let mut s = Sampler::default();
    let n = 200;
    for _ in 0..n {
        let l = random::lattice(&mut rng, 2);
        match arthur_correspondence_rank2(&l, rng.gen_range(1.0..4.0), cfg) {
            Ok((a, b)) => s.violations += usize::from(a != b),
            Err(e) => s.error(e),
        }
    }
    vec![s.exact_check("arthur: polygon side equals height side", n)]
}

/// Height of the stored coset table for the constant-term comparisons.
pub const SL3_LOCK_HEIGHT: u32 = 40;

/// Relative deviations `|formula - numeric| / |numeric|` of the printed
/// constant terms at `(s, t) = (3, 2)`, `Y = I`, observed at height 40.
pub const SL3_LOCKED_PRINTED: [(&str, f64); 3] =
    [("P0", 0.20259084772186184), ("P1", 0.03760362740370244), ("P2", 0.028338956876600315)];

fn sl3_suite(cfg: &NumericsConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(11);

    let mut rt = Sampler::default();
    for _ in 0..100 {
        let y = SL3Point::new(
            rng.gen_range(0.2..4.0),
            rng.gen_range(0.2..4.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
        .expect("valid point");
        let m = y.to_matrix();
        for p in [MaximalParabolic::P1, MaximalParabolic::P2] {
            let r = y.coords(p).recompose();
            for i in 0..3 {
                for j in 0..3 {
                    rt.max_err = rt.max_err.max((r[i][j] - m[i][j]).abs());
                }
            }
        }
    }
    out.push(rt.bound_check("sl3: coordinate recomposition residual", 1e-12, 100));

    let (s, t) = (c(3.0), c(2.0));
    let inv = (|| -> nazeta_core::Result<Check> {
        let table = FlagTable::build(cfg.sl3_height, cfg)?;
        let (mut worst, mut worst_ratio) = (0.0f64, 0.0f64);
        for _ in 0..10 {
            let y = SL3Point::new(
                rng.gen_range(0.7..1.4),
                rng.gen_range(0.7..1.4),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
            )?;
            let u = random::unimodular(&mut rng, 3, 3);
            let g = [[u[0][0], u[0][1], u[0][2]], [u[1][0], u[1][1], u[1][2]], [u[2][0], u[2][1], u[2][2]]];
            let a = table.sum(&y.to_matrix(), s, t, cfg)?;
            let b = table.sum(&y.act(&g)?.to_matrix(), s, t, cfg)?;
            let diff = (a.value - b.value).norm();
            worst = worst.max(diff);
            worst_ratio = worst_ratio.max(diff / a.estimate.max(b.estimate));
        }
        Ok(Check::new(
            "sl3: |E(gamma Y) - E(Y)| within the convergence estimate",
            worst_ratio.into(),
            1.0.into(),
            worst,
            1.0,
            worst_ratio <= 1.0,
        )
        .with_notes(format!("10 random (gamma, Y), height {}, lhs = max difference / estimate", cfg.sl3_height)))
    })();
    out.push(inv.unwrap_or_else(|e| Check::error("sl3: Gamma-invariance", e)));

    let comparisons = (|| -> nazeta_core::Result<Vec<Check>> {
        let table = FlagTable::build(SL3_LOCK_HEIGHT, cfg)?;
        let id = SL3Point::identity();
        let xp = xi_product(s, t, cfg)?;
        let mut checks = Vec::new();
        let rows = [
            (
                Parabolic::P1,
                constant_term_pi_formula(&id, s, t, MaximalParabolic::P1, cfg)?,
                constant_term_pi_langlands(&id, s, t, MaximalParabolic::P1, cfg)?,
            ),
            (Parabolic::P0, constant_term_p0_formula(&id, s, t, cfg)?, constant_term_p0_langlands(&id, s, t, cfg)?),
            (
                Parabolic::P2,
                constant_term_pi_formula(&id, s, t, MaximalParabolic::P2, cfg)?,
                constant_term_pi_langlands(&id, s, t, MaximalParabolic::P2, cfg)?,
            ),
        ];
        for (k, (p, printed, derived)) in rows.into_iter().enumerate() {
            let numeric = constant_term_numeric(&id, s, t, p, &table, cfg)?;
            let value = numeric.value * xp;
            let rel = |f: Complex| (f - value).norm() / value.norm();
            let (dp, dd) = (rel(printed), rel(derived));
            let label = ["P1", "P0", "P2"][k];
            let common = format!(
                "numeric {} (height {SL3_LOCK_HEIGHT}, estimate {:.2e}); Weyl-group formula {} deviates {dd:.3e}",
                format_complex(value),
                numeric.estimate * xp.norm(),
                format_complex(derived)
            );
            if p == Parabolic::P1 {
                checks.push(
                    Check::new(
                        "sl3: printed P1 constant term vs unipotent average (relative)",
                        format_complex(printed).into(),
                        format_complex(value).into(),
                        dp,
                        1e-2,
                        dp < 1e-2,
                    )
                    .with_notes(common.clone()),
                );
            }
            checks.push(
                Check::new(
                    format!("sl3: Weyl-group {label} constant term vs unipotent average (relative)"),
                    format_complex(derived).into(),
                    format_complex(value).into(),
                    dd,
                    1e-2,
                    dd < 1e-2,
                )
                .with_notes(format!("height {SL3_LOCK_HEIGHT}")),
            );
            let locked = SL3_LOCKED_PRINTED.iter().find(|(n, _)| *n == label).map(|x| x.1).unwrap_or(f64::NAN);
            let err = (dp - locked).abs();
            checks.push(
                Check::new(
                    format!("sl3: printed {label} deviation regression lock"),
                    dp.into(),
                    locked.into(),
                    err,
                    1e-6,
                    err < 1e-6,
                )
                .with_notes(format!("printed {}; {common}", format_complex(printed))),
            );
        }
        Ok(checks)
    })();
    match comparisons {
        Ok(c) => out.extend(c),
        Err(e) => out.push(Check::error("sl3: constant-term comparisons", e)),
    }
    out
}

fn tannaka_suite(_cfg: &NumericsConfig) -> Vec<Check> {
    let lib = IrreducibleLibrary::s3();
    let get = |n: &str| lib.get(n).expect("library member").clone();
    let (s11, s12, s21) = (get("Sigma11"), get("Sigma12"), get("Sigma21"));
    let identity = |name: &str, holds: bool| {
        Check::new(
            format!("tannaka: {name}"),
            Value::Bool(holds),
            Value::Bool(true),
            f64::from(u8::from(!holds)),
            0.0,
            holds,
        )
    };
    let unit = [&s11, &s12, &s21].iter().all(|b| s11.tensor(b).equivalent(b));
    let mut out = vec![
        identity("Sigma11 (x) Sigma_ij = Sigma_ij", unit),
        identity("Sigma12 (x) Sigma12 = Sigma11", s12.tensor(&s12) == s11),
        identity("Sigma12 (x) Sigma21 = Sigma21", s12.tensor(&s21).equivalent(&s21)),
        identity(
            "Sigma21 (x) Sigma21 = Sigma21 + Sigma12 + Sigma11",
            s21.tensor(&s21).equivalent(&s21.direct_sum(&s12).direct_sum(&s11))
                && decompose(&s21.tensor(&s21), &lib).is_ok_and(|d| d.iter().all(|(_, m)| *m == 1) && d.len() == 3),
        ),
    ];
    out.push(match fusion_table(&lib) {
        Ok(t) => identity("fusion table equals the S3 character-ring table", matches_s3(&t, &lib)),
        Err(e) => Check::error("tannaka: fusion table", e),
    });
    let members: Vec<_> = lib.members().iter().map(|(_, b)| b).collect();
    let conserved = members.iter().all(|a| members.iter().all(|b| a.tensor(b).par_degree().is_zero()));
    out.push(identity("parabolic degree of every product is 0", conserved));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_every_criterion_once() {
        let criteria: Vec<u8> = SUITES.iter().map(|s| s.criterion).collect();
        assert_eq!(criteria, (1..=12).collect::<Vec<_>>());
        assert!(suite("tannaka").is_some());
        assert!(run_suite("nope", &NumericsConfig::default()).is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        let cfg = NumericsConfig::default();
        for name in ["riemann-roch", "rank1-zeta", "rank2-fe", "residues", "tannaka"] {
            assert!(run_suite(name, &cfg).unwrap().iter().all(|c| c.pass), "{name}");
        }
    }
}
