//! Constant terms along `P0`, `P1`, `P2`: the printed formulas, the sums over
//! the Weyl group, unipotent averages of the coset sum, and the functional
//! equation report.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use super::flags::{check_region, FlagTable, SeriesResult};
use super::{MaximalParabolic, SL3Point};
use crate::eis2::eisenstein_fourier;
use crate::numerics::{pow_real, xi_completed, GaussLegendre};
use crate::{Complex, Error, NumericsConfig, Result};

pub use super::flags::xi_product;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parabolic {
    P0,
    P1,
    P2,
}

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

fn xi(s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    xi_completed(s, cfg)
}

/// The five printed terms along `P0`, with `y, u` the `P1` coordinates.
pub fn p0_formula_terms(y: &SL3Point, s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<[Complex; 5]> {
    let l = y.coords(MaximalParabolic::P1);
    let (yy, u) = (l.y, l.z.y);
    let one = c(1.0);
    Ok([
        xi(2.0 * t, cfg)? * xi(3.0 * s - t, cfg)? * xi(3.0 * s + t - one, cfg)? * pow_real(yy, s) * pow_real(u, t),
        xi(2.0 * t, cfg)?
            * xi(3.0 * s - t - one, cfg)?
            * xi(3.0 * s + t - one, cfg)?
            * pow_real(yy, s)
            * pow_real(u, one - t),
        xi(2.0 * t - one, cfg)?
            * xi(3.0 * s - t - one, cfg)?
            * xi(3.0 * s + t - 2.0, cfg)?
            * pow_real(yy, (one - s - t) * 0.5)
            * pow_real(u, (2.0 - 3.0 * s + t) * 0.5),
        xi(2.0 * t, cfg)?
            * xi(3.0 * s - t - one, cfg)?
            * xi(3.0 * s + t - one, cfg)?
            * pow_real(yy, (one - s - t) * 0.5)
            * pow_real(u, (3.0 - 3.0 * s - t) * 0.5),
        xi(2.0 * t - one, cfg)?
            * xi(3.0 * s - t, cfg)?
            * xi(3.0 * s + t - 2.0, cfg)?
            * pow_real(yy, (2.0 - s - t) * 0.5)
            * pow_real(u, (3.0 * s - t) * 0.5),
    ])
}

/// Printed constant term of the completed series along `P0`, as typeset.
pub fn constant_term_p0_formula(y: &SL3Point, s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    Ok(p0_formula_terms(y, s, t, cfg)?.iter().sum())
}

/// The three printed terms along `P_i`.
pub fn pi_formula_terms(
    y: &SL3Point,
    s: Complex,
    t: Complex,
    i: MaximalParabolic,
    cfg: &NumericsConfig,
) -> Result<[Complex; 3]> {
    let l = y.coords(i);
    let one = c(1.0);
    Ok([
        xi(3.0 * s - t, cfg)? * xi(3.0 * s + t - one, cfg)? * pow_real(l.y, s) * eisenstein_fourier(l.z, t, cfg)?,
        xi(2.0 * t, cfg)?
            * xi(3.0 * s - t - one, cfg)?
            * pow_real(l.y, (one - s - t) * 0.5)
            * eisenstein_fourier(l.z, (3.0 * s + t - one) * 0.5, cfg)?,
        xi(2.0 * t - one, cfg)?
            * xi(3.0 * s - t, cfg)?
            * pow_real(l.y, (2.0 - s - t) * 0.5)
            * eisenstein_fourier(l.z, (3.0 - 3.0 * s - t) * 0.5, cfg)?,
    ])
}

/// Printed constant term of the completed series along `P_i`, as typeset.
pub fn constant_term_pi_formula(
    y: &SL3Point,
    s: Complex,
    t: Complex,
    i: MaximalParabolic,
    cfg: &NumericsConfig,
) -> Result<Complex> {
    Ok(pi_formula_terms(y, s, t, i, cfg)?.iter().sum())
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// One Weyl group term: `w`, the coefficient `c(w)` and `mu = w lambda + rho`.
struct WeylTerm {
    coefficient: Complex,
    mu: [Complex; 3],
    inverse: [usize; 3],
}

/// `lambda = (s + t - 1, s - t, 1 - 2s)`; the completed constant term along
/// `P0` is `sum_w c(w) a^{w lambda + rho}` with
/// `c(w) = prod_{i<j, w(i)<w(j)} xi(l_i - l_j + 1) prod_{i<j, w(i)>w(j)} xi(l_i - l_j)`.
fn weyl_terms(s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<Vec<WeylTerm>> {
    let lambda = [s + t - 1.0, s - t, 1.0 - 2.0 * s];
    let rho = [1.0, 0.0, -1.0];
    let mut out = Vec::with_capacity(6);
    for w in PERMUTATIONS {
        let mut inverse = [0; 3];
        for (i, &wi) in w.iter().enumerate() {
            inverse[wi] = i;
        }
        let mut coefficient = c(1.0);
        for i in 0..3 {
            for j in i + 1..3 {
                let d = lambda[i] - lambda[j];
                coefficient *= if w[i] < w[j] { xi(d + 1.0, cfg)? } else { xi(d, cfg)? };
            }
        }
        let mu = [0, 1, 2].map(|i| lambda[inverse[i]] + rho[i]);
        out.push(WeylTerm { coefficient, mu, inverse });
    }
    Ok(out)
}

/// `a^mu` for `a = diag(y1, y2, 1/(y1 y2))`.
fn torus_character(y: &SL3Point, mu: &[Complex; 3]) -> Complex {
    pow_real(y.y1, mu[0] - mu[2]) * pow_real(y.y2, mu[1] - mu[2])
}

/// Six-term constant term along `P0` from the Weyl group sum.
pub fn constant_term_p0_langlands(y: &SL3Point, s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    Ok(weyl_terms(s, t, cfg)?.iter().map(|w| w.coefficient * torus_character(y, &w.mu)).sum())
}

/// Three-term constant term along `P_i` obtained by pairing the Weyl terms
/// that differ by the simple reflection of the Levi factor.
pub fn pi_langlands_terms(
    y: &SL3Point,
    s: Complex,
    t: Complex,
    i: MaximalParabolic,
    cfg: &NumericsConfig,
) -> Result<Vec<Complex>> {
    let l = y.coords(i);
    let mut out = Vec::with_capacity(3);
    for w in weyl_terms(s, t, cfg)? {
        let (keep, r, e) = match i {
            MaximalParabolic::P1 => {
                (w.inverse[0] < w.inverse[1], (w.mu[0] - w.mu[1]) * 0.5, (w.mu[0] + w.mu[1]) / 6.0 - w.mu[2] / 3.0)
            }
            MaximalParabolic::P2 => {
                (w.inverse[1] < w.inverse[2], (w.mu[1] - w.mu[2]) * 0.5, (w.mu[1] + w.mu[2]) / 6.0 - w.mu[0] / 3.0)
            }
        };
        if keep {
            out.push(w.coefficient / xi(2.0 * r, cfg)? * pow_real(l.y, e) * eisenstein_fourier(l.z, r, cfg)?);
        }
    }
    Ok(out)
}

pub fn constant_term_pi_langlands(
    y: &SL3Point,
    s: Complex,
    t: Complex,
    i: MaximalParabolic,
    cfg: &NumericsConfig,
) -> Result<Complex> {
    Ok(pi_langlands_terms(y, s, t, i, cfg)?.iter().sum())
}

/// Quadrature nodes `(weight, (a12, a13, a23))` on the compact unipotent
/// quotient of `P`.
pub fn unipotent_nodes(p: Parabolic, cfg: &NumericsConfig) -> Vec<(f64, [f64; 3])> {
    let rule = GaussLegendre::new(cfg.unipotent_nodes);
    let nodes: Vec<(f64, f64)> = rule.mapped(0.0, 1.0).collect();
    let mut out = Vec::new();
    match p {
        Parabolic::P0 => {
            for &(a, wa) in &nodes {
                for &(b, wb) in &nodes {
                    for &(cc, wc) in &nodes {
                        out.push((wa * wb * wc, [a, b, cc]));
                    }
                }
            }
        }
        Parabolic::P1 | Parabolic::P2 => {
            for &(a, wa) in &nodes {
                for &(b, wb) in &nodes {
                    let n = if p == Parabolic::P1 { [0.0, a, b] } else { [a, b, 0.0] };
                    out.push((wa * wb, n));
                }
            }
        }
    }
    out
}

/// Average of the (raw) coset sum over `(Gamma cap N) \ N` at `n Y`.
pub fn constant_term_numeric(
    y: &SL3Point,
    s: Complex,
    t: Complex,
    p: Parabolic,
    table: &FlagTable,
    cfg: &NumericsConfig,
) -> Result<SeriesResult> {
    check_region(s, t, cfg)?;
    let mut value = c(0.0);
    let mut estimate = 0.0;
    for (w, n) in unipotent_nodes(p, cfg) {
        let r = table.sum(&y.translate(n[0], n[1], n[2]).to_matrix(), s, t, cfg)?;
        value += r.value * w;
        estimate += r.estimate * w;
    }
    Ok(SeriesResult { value, estimate, flags: table.len() })
}

/// One substituted functional equation.
#[derive(Debug, Clone, PartialEq)]
pub struct FeEntry {
    pub label: &'static str,
    pub s: Complex,
    pub t: Complex,
    pub printed: Option<Complex>,
    pub printed_deviation: Option<f64>,
    pub langlands: Option<Complex>,
    pub langlands_deviation: Option<f64>,
    pub error: Option<Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeReport {
    pub s: Complex,
    pub t: Complex,
    pub printed: Complex,
    pub langlands: Complex,
    pub entries: Vec<FeEntry>,
}

/// The five parameter substitutions of the functional equations.
pub fn substitutions(s: Complex, t: Complex) -> [(&'static str, Complex, Complex); 5] {
    let one = c(1.0);
    [
        ("i", s, one - t),
        ("ii", (one - s + t) * 0.5, (3.0 * s + t - one) * 0.5),
        ("iii", (2.0 - s - t) * 0.5, (2.0 - 3.0 * s + t) * 0.5),
        ("iv", (one - s + t) * 0.5, (3.0 - 3.0 * s - t) * 0.5),
        ("v", (2.0 - s - t) * 0.5, (3.0 * s - t) * 0.5),
    ]
}

/// Evaluates the printed and the Weyl-sum constant terms along `P0` at
/// `(s, t)` and at each substitution and reports the deviations. Failures at a
/// substituted pair are recorded in its entry.
pub fn fe_adjudicate(s: Complex, t: Complex, y: &SL3Point, cfg: &NumericsConfig) -> Result<FeReport> {
    let printed = constant_term_p0_formula(y, s, t, cfg)?;
    let langlands = constant_term_p0_langlands(y, s, t, cfg)?;
    let entries = substitutions(s, t)
        .into_iter()
        .map(|(label, s2, t2)| {
            let p = constant_term_p0_formula(y, s2, t2, cfg);
            let l = constant_term_p0_langlands(y, s2, t2, cfg);
            let error = p.as_ref().err().or(l.as_ref().err()).cloned();
            let printed_value = p.ok();
            let langlands_value = l.ok();
            FeEntry {
                label,
                s: s2,
                t: t2,
                printed: printed_value,
                printed_deviation: printed_value.map(|v| (v - printed).norm()),
                langlands: langlands_value,
                langlands_deviation: langlands_value.map(|v| (v - langlands).norm()),
                error,
            }
        })
        .collect();
    Ok(FeReport { s, t, printed, langlands, entries })
}
