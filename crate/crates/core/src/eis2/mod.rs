//! `SL2(Z)` Eisenstein series on the upper half-plane.
//!
//! `E(z; s)` is normalized by its constant term
//! `a_0(y; s) = xi(2s) y^s + xi(2 - 2s) y^{1-s}`, i.e. it is `pi^{-s} Gamma(s)`
//! times the sum over nonzero pairs `(m, n)` taken up to sign.

mod geo;

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::lattice::{minkowski_point, Lattice};
use crate::numerics::{gamma_complex, guard, k_bessel, pow_real, sigma_divisor, xi_completed, GaussLegendre};
use crate::{Complex, Error, NumericsConfig, Result};

pub use geo::{geo_truncated_integral_numeric, QuadratureResult};

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain("point must satisfy y > 0".into()));
        }
        Ok(Self { x, y })
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.x, self.y)
    }

    /// Mobius action of an integer matrix of determinant one.
    pub fn act(self, g: [[i64; 2]; 2]) -> Self {
        let z = self.to_complex();
        let w = (z * g[0][0] as f64 + g[0][1] as f64) / (z * g[1][0] as f64 + g[1][1] as f64);
        Self { x: w.re, y: w.im }
    }

    /// Closed fundamental domain `|x| <= 1/2, x^2 + y^2 >= 1`.
    pub fn in_fundamental_domain(self, eps: f64) -> bool {
        self.x.abs() <= 0.5 + eps && self.x * self.x + self.y * self.y >= 1.0 - eps
    }
}

const BOUNDARY_EPS: f64 = 1e-13;

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Returns `(z', g)` with `z' = g z` in the fundamental domain, boundary
/// points canonicalized to `x >= 0`.
pub fn reduce_sl2(z: UpperHalfPoint) -> Result<(UpperHalfPoint, [[i64; 2]; 2])> {
    let mut g = [[1, 0], [0, 1]];
    let mut w = z;
    for _ in 0..10_000 {
        let n = libm::round(w.x);
        if n.abs() > 1e15 {
            return Err(Error::Domain("real part too large to reduce".into()));
        }
        let n = n as i64;
        if n != 0 {
            g = mat_mul([[1, -n], [0, 1]], g);
            w = UpperHalfPoint { x: w.x - n as f64, y: w.y };
        }
        if w.x * w.x + w.y * w.y < 1.0 - BOUNDARY_EPS {
            g = mat_mul([[0, -1], [1, 0]], g);
            w = w.act([[0, -1], [1, 0]]);
        } else {
            if w.x < -0.5 + BOUNDARY_EPS {
                g = mat_mul([[1, 1], [0, 1]], g);
                w = UpperHalfPoint { x: w.x + 1.0, y: w.y };
            }
            if w.x < 0.0 && (w.x * w.x + w.y * w.y - 1.0).abs() < BOUNDARY_EPS {
                g = mat_mul([[0, -1], [1, 0]], g);
                w = UpperHalfPoint { x: -w.x, y: w.y };
            }
            return Ok((w, g));
        }
    }
    Err(Error::NonConvergence(10_000))
}

fn check_direct_region(s: Complex, cfg: &NumericsConfig) -> Result<()> {
    if s.re <= 1.0 + cfg.series_cutoff_margin {
        return Err(Error::ConvergenceRegion(alloc::format!(
            "direct sum needs Re(s) > {}, got {}",
            1.0 + cfg.series_cutoff_margin,
            s.re
        )));
    }
    Ok(())
}

/// Box size for the corrected direct sum: the remainder after the two
/// correction terms decays like `N^{-2 Re(s) - 2}`.
fn direct_box(s: Complex, cfg: &NumericsConfig) -> i64 {
    let n = libm::pow(cfg.abs_tol, -1.0 / (2.0 * s.re + 2.0)) * 2.0;
    (n.ceil() as i64).clamp(24, 600)
}

/// Direct lattice sum `pi^{-s} Gamma(s) sum_{(m,n) != 0} y^s |mz + n|^{-2s} / 2`.
///
/// Pairs with `max(|m|,|n|) <= N` are summed; the rest is replaced by the
/// midpoint-rule expansion `int f - (1/24) int Laplacian(f)` over the outside
/// of the square `[-N-1/2, N+1/2]^2`, evaluated as line integrals over the
/// unit square by homogeneity.
pub fn eisenstein_direct(z: UpperHalfPoint, s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    check_direct_region(s, cfg)?;
    let n = direct_box(s, cfg);
    let (x, y) = (z.x, z.y);
    let r2 = x * x + y * y;
    let q = |m: f64, k: f64| r2 * m * m + 2.0 * x * m * k + k * k;
    // half plane: m > 0, or m = 0 and n > 0
    let mut sum = Complex::new(0.0, 0.0);
    for m in 0..=n {
        let mut row = Complex::new(0.0, 0.0);
        let start = if m == 0 { 1 } else { -n };
        for k in start..=n {
            row += pow_real(q(m as f64, k as f64), -s);
        }
        sum += row;
    }
    let a = n as f64 + 0.5;
    let lap = |m: f64, k: f64| {
        // f = Q^{-s}; Laplacian in (m, k)
        let qv = q(m, k);
        let qm = 2.0 * r2 * m + 2.0 * x * k;
        let qk = 2.0 * x * m + 2.0 * k;
        let dq = 2.0 * r2 + 2.0;
        let grad2 = qm * qm + qk * qk;
        -s * pow_real(qv, -s - 1.0) * dq + s * (s + 1.0) * pow_real(qv, -s - 2.0) * grad2
    };
    let rule = GaussLegendre::new(64);
    let mut line_f = Complex::new(0.0, 0.0);
    let mut line_lap = Complex::new(0.0, 0.0);
    // the four sides of [-1, 1]^2, each split in two panels
    for (lo, hi) in [(-1.0, 0.0), (0.0, 1.0)] {
        for (t, w) in rule.mapped(lo, hi) {
            for (m, k) in [(1.0, t), (-1.0, t), (t, 1.0), (t, -1.0)] {
                line_f += pow_real(q(m, k), -s) * w;
                line_lap += lap(m, k) * w;
            }
        }
    }
    let tail =
        pow_real(a, 2.0 - 2.0 * s) / (2.0 * s - 2.0) * line_f - pow_real(a, -2.0 * s) / (2.0 * s) * line_lap / 24.0;
    // the outside region is symmetric under (m, k) -> (-m, -k)
    let total = sum + 0.5 * tail;
    let pref = pow_real(PI, -s) * gamma_complex(s, cfg)? * pow_real(y, s);
    Ok(pref * total)
}

/// Constant term `xi(2s) y^s + xi(2 - 2s) y^{1-s}`.
pub fn a0(y: f64, s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    guard(s, &[0.0, 0.5, 1.0], cfg)?;
    Ok(xi_completed(2.0 * s, cfg)? * pow_real(y, s) + xi_completed(2.0 - 2.0 * s, cfg)? * pow_real(y, 1.0 - s))
}

/// Fourier coefficients `c_n` (for `n >= 1`) at height `y`, with
/// `E = a_0 + sum_n c_n cos(2 pi n x)`.
pub(crate) fn fourier_coefficients(y: f64, s: Complex, cfg: &NumericsConfig) -> Result<Vec<Complex>> {
    let nu = s - 0.5;
    let stop = -libm::log(cfg.abs_tol * 1e-3);
    let mut out = Vec::new();
    let mut n = 1u64;
    loop {
        let arg = 2.0 * PI * n as f64 * y;
        let k = k_bessel(nu, arg, cfg)?;
        let c = 4.0 * pow_real(n as f64, nu) * sigma_divisor(1.0 - 2.0 * s, n) * libm::sqrt(y) * k.value;
        out.push(c);
        if k.underflow || arg - (nu.re.abs() + 1.0) * libm::log(n as f64 + 1.0) > stop + 5.0 {
            break;
        }
        n += 1;
    }
    Ok(out)
}

pub(crate) fn fourier_sum(x: f64, coeffs: &[Complex]) -> Complex {
    coeffs
        .iter()
        .enumerate()
        .fold(Complex::new(0.0, 0.0), |acc, (i, c)| acc + c * libm::cos(2.0 * PI * (i + 1) as f64 * x))
}

/// Fourier expansion at the reduced point; valid for every `s` outside the guards.
pub fn eisenstein_fourier(z: UpperHalfPoint, s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    let (w, _) = reduce_sl2(z)?;
    let coeffs = fourier_coefficients(w.y, s, cfg)?;
    Ok(a0(w.y, s, cfg)? + fourier_sum(w.x, &coeffs))
}

/// `E(z; s)` if `y <= T`, else `E(z; s) - a_0(y; s)`.
pub fn truncated_eisenstein(z: UpperHalfPoint, s: Complex, t: f64, cfg: &NumericsConfig) -> Result<Complex> {
    check_height(t)?;
    let e = eisenstein_fourier(z, s, cfg)?;
    if z.y <= t {
        Ok(e)
    } else {
        Ok(e - a0(z.y, s, cfg)?)
    }
}

pub(crate) fn check_height(t: f64) -> Result<()> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::Domain(alloc::format!("truncation height must be >= 1, got {t}")));
    }
    Ok(())
}

/// Completed Epstein zeta `pi^{-s} Gamma(s) sum_{x != 0} |x|^{-2s}` of a rank-2 lattice.
pub fn epstein_lattice(lattice: &Lattice, s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    let p = minkowski_point(lattice)?;
    Ok(2.0 * pow_real(p.scale, -2.0 * s) * eisenstein_fourier(p.z, s, cfg)?)
}

/// `xi(2s) T^{s-1}/(s-1) - xi(2s-1) T^{-s}/s`.
pub fn closed_form_it(s: Complex, t: f64, cfg: &NumericsConfig) -> Result<Complex> {
    check_height(t)?;
    guard(s, &[0.0, 0.5, 1.0], cfg)?;
    Ok(xi_completed(2.0 * s, cfg)? * pow_real(t, s - 1.0) / (s - 1.0)
        - xi_completed(2.0 * s - 1.0, cfg)? * pow_real(t, -s) / s)
}
