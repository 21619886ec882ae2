//! Integral of `E(z; s)` over the truncated fundamental domain `D_T`.

#[allow(unused_imports)]
use num_traits::Float;

use super::{a0, check_height, fourier_coefficients, fourier_sum};
use crate::numerics::GaussLegendre;
use crate::{Complex, Error, NumericsConfig, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
}

fn panels(a: f64, b: f64, count: usize) -> impl Iterator<Item = (f64, f64)> {
    let h = (b - a) / count as f64;
    (0..count).map(move |i| (a + i as f64 * h, a + (i + 1) as f64 * h))
}

/// Tensor Gauss-Legendre over `D_T` with `count` panels per axis in each of
/// the two pieces `{sqrt(1 - x^2) <= y <= 1}` and `{1 <= y <= T}`. The integrand
/// is even in `x`, so only `x >= 0` is visited.
fn tensor_rule(s: Complex, t: f64, rule: &GaussLegendre, count: usize, cfg: &NumericsConfig) -> Result<Complex> {
    let mut total = Complex::new(0.0, 0.0);
    for (x0, x1) in panels(0.0, 0.5, count) {
        for (x, wx) in rule.mapped(x0, x1) {
            let lo = libm::sqrt(1.0 - x * x);
            for (y0, y1) in panels(lo, 1.0, count) {
                for (y, wy) in rule.mapped(y0, y1) {
                    let e = a0(y, s, cfg)? + fourier_sum(x, &fourier_coefficients(y, s, cfg)?);
                    total += e * (wx * wy / (y * y));
                }
            }
        }
    }
    if t > 1.0 {
        for (y0, y1) in panels(1.0, t, count) {
            for (y, wy) in rule.mapped(y0, y1) {
                let c0 = a0(y, s, cfg)?;
                let coeffs = fourier_coefficients(y, s, cfg)?;
                let mut row = Complex::new(0.0, 0.0);
                for (x0, x1) in panels(0.0, 0.5, count) {
                    for (x, wx) in rule.mapped(x0, x1) {
                        row += (c0 + fourier_sum(x, &coeffs)) * wx;
                    }
                }
                total += row * (wy / (y * y));
            }
        }
    }
    Ok(2.0 * total)
}

/// `int_{D_T} E(z; s) dx dy / y^2`, refined by doubling the panel count until
/// two successive levels agree to `quadrature_tol`.
pub fn geo_truncated_integral_numeric(s: Complex, t: f64, cfg: &NumericsConfig) -> Result<QuadratureResult> {
    check_height(t)?;
    let rule = GaussLegendre::new(cfg.quadrature_order);
    let mut prev = tensor_rule(s, t, &rule, 1, cfg)?;
    let mut estimate = f64::INFINITY;
    for level in 1..=cfg.quadrature_depth {
        let cur = tensor_rule(s, t, &rule, 1 << level, cfg)?;
        estimate = (cur - prev).norm();
        prev = cur;
        if estimate < cfg.quadrature_tol {
            return Ok(QuadratureResult { value: cur, error_estimate: estimate });
        }
    }
    Err(Error::QuadratureBudget { estimate })
}
