//! Rank-1 and rank-2 zeta functions of `Q`, contour residues, areas of `D_T`.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::eis2::{closed_form_it, geo_truncated_integral_numeric, QuadratureResult};
use crate::numerics::{pow_real, theta_tail, GaussLegendre};
use crate::{Complex, Error, NumericsConfig, Result};

/// `omega(u)` for `0 < u < 1` through `theta(1/u) = sqrt(u) theta(u)`.
fn omega_small(u: f64) -> f64 {
    0.5 * ((1.0 + 2.0 * theta_tail(1.0 / u)) / libm::sqrt(u) - 1.0)
}

/// `int_0^inf (theta_Z(V^2) - 1) V^s dV/V = int_0^inf omega(u) u^{s/2} du/u`.
///
/// On `(0, 1]` the substitution `u = e^{-w}` leaves an integrand decaying like
/// `exp(-(Re s - 1) w / 2)`; on `[1, inf)` the theta tail decays like `e^{-pi u}`.
pub fn zeta_rank1_numeric(s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    if s.re <= 1.0 + cfg.series_cutoff_margin {
        return Err(Error::ConvergenceRegion(alloc::format!("rank-1 integral needs Re(s) > 1, got {}", s.re)));
    }
    let rule = GaussLegendre::new(24);
    let half = 0.5 * s;
    let rate = 0.5 * (s.re - 1.0);
    let eps = cfg.abs_tol * 1e-2;
    let mut low = Complex::new(0.0, 0.0);
    let mut w0 = 0.0;
    while libm::exp(-rate * w0) / rate > eps {
        low += rule.integrate(w0, w0 + 1.0, |w| pow_real(libm::exp(-w), half) * omega_small(libm::exp(-w)));
        w0 += 1.0;
    }
    let mut high = Complex::new(0.0, 0.0);
    let mut u0 = 1.0;
    while libm::exp(-PI * u0) * libm::pow(u0, half.re.max(0.0)) > eps {
        high += rule.integrate(u0, u0 + 1.0, |u| pow_real(u, half - 1.0) * theta_tail(u));
        u0 += 1.0;
    }
    Ok(low + high)
}

/// `xi(2s)/(s-1) - xi(2s-1)/s`.
pub fn zeta_rank2(s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    closed_form_it(s, 1.0, cfg)
}

/// Integral of the Eisenstein series over `D_1`.
pub fn zeta_rank2_numeric(s: Complex, cfg: &NumericsConfig) -> Result<QuadratureResult> {
    geo_truncated_integral_numeric(s, 1.0, cfg)
}

pub const CONTOUR_RADIUS: f64 = 0.01;
pub const CONTOUR_NODES: usize = 32;

/// `(1 / 2 pi i) oint f(s) ds` over the circle of radius 0.01 about `s0`
/// by the trapezoidal rule on 32 nodes.
pub fn residue_at<F>(mut f: F, s0: Complex) -> Result<Complex>
where
    F: FnMut(Complex) -> Result<Complex>,
{
    let mut sum = Complex::new(0.0, 0.0);
    for k in 0..CONTOUR_NODES {
        let e = Complex::from_polar(1.0, 2.0 * PI * k as f64 / CONTOUR_NODES as f64);
        let v = f(s0 + e * CONTOUR_RADIUS)
            .map_err(|err| Error::ContourFailure { node: k, message: alloc::format!("{err}") })?;
        sum += v * e * CONTOUR_RADIUS;
    }
    Ok(sum / CONTOUR_NODES as f64)
}

/// Hyperbolic area of `D_T`, `pi/3 - 1/T`.
pub fn volume_d_t(t: f64) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::Domain(alloc::format!("T must be at least 1, got {t}")));
    }
    Ok(PI / 3.0 - 1.0 / t)
}

/// `int_{-1/2}^{1/2} (1/sqrt(1 - x^2) - 1/T) dx` by Gauss-Legendre.
pub fn volume_d_t_quadrature(t: f64, cfg: &NumericsConfig) -> Result<f64> {
    volume_d_t(t)?;
    let rule = GaussLegendre::new(cfg.quadrature_order);
    Ok(2.0 * rule.integrate(0.0, 0.5, |x| 1.0 / libm::sqrt(1.0 - x * x) - 1.0 / t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::xi_completed;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    fn zeta_series(k: i32) -> f64 {
        let n = 100_000;
        (1..n).map(|m| (m as f64).powi(-k)).sum::<f64>() + (n as f64).powi(1 - k) / (k - 1) as f64
    }

    #[test]
    fn rank_one() {
        let v = zeta_rank1_numeric(c(2.0, 0.0), &cfg()).unwrap();
        assert!((v.re - PI / 6.0).abs() < 1e-12 && v.im == 0.0);
        let xi3 = PI.powf(-1.5) * (PI.sqrt() / 2.0) * zeta_series(3);
        let v = zeta_rank1_numeric(c(3.0, 0.0), &cfg()).unwrap();
        assert!((v.re - xi3).abs() < 1e-9 && (v.re - 0.191314).abs() < 1e-6);
        let s = c(2.0, 1.0);
        let v = zeta_rank1_numeric(s, &cfg()).unwrap();
        assert!((v - xi_completed(s, &cfg()).unwrap()).norm() < 1e-10);
        assert!(zeta_rank1_numeric(c(1.05, 0.0), &cfg()).is_err());
    }

    #[test]
    fn rank_two() {
        let xi = |k: i32| {
            let g = libm::tgamma(k as f64 / 2.0);
            PI.powf(-k as f64 / 2.0) * g * zeta_series(k)
        };
        let v = zeta_rank2(c(2.0, 0.0), &cfg()).unwrap();
        assert!((v.re - (xi(4) - xi(3) / 2.0)).abs() < 1e-9);
        let v = zeta_rank2(c(3.0, 0.0), &cfg()).unwrap();
        assert!((v.re - (xi(6) / 2.0 - xi(5) / 3.0)).abs() < 1e-9);
        let s = c(0.3, 2.0);
        let d = zeta_rank2(s, &cfg()).unwrap() - zeta_rank2(1.0 - s, &cfg()).unwrap();
        assert!(d.norm() < 1e-10);
        for s in [c(2.0, 0.0), c(2.5, 0.0), c(1.5, 1.0)] {
            let q = zeta_rank2_numeric(s, &cfg()).unwrap();
            assert!((q.value - zeta_rank2(s, &cfg()).unwrap()).norm() < 1e-6);
        }
    }

    #[test]
    fn residues() {
        let c0 = cfg();
        let r1 = residue_at(|s| zeta_rank2(s, &c0), c(1.0, 0.0)).unwrap();
        let r0 = residue_at(|s| zeta_rank2(s, &c0), c(0.0, 0.0)).unwrap();
        let expected = PI / 6.0 - 0.5;
        assert!((r1 - expected).norm() < 1e-10);
        assert!((r0 + expected).norm() < 1e-10);
        let rx = residue_at(|s| xi_completed(s, &c0), c(1.0, 0.0)).unwrap();
        assert!((rx - 1.0).norm() < 1e-10);
        assert!(((r1.re / volume_d_t(1.0).unwrap()) - 0.5).abs() < 1e-10);
        let tight = NumericsConfig { pole_guard_radius: 0.5, ..cfg() };
        assert!(matches!(
            residue_at(|s| zeta_rank2(s, &tight), c(1.0, 0.0)),
            Err(Error::ContourFailure { node: 0, .. })
        ));
    }

    #[test]
    fn volumes() {
        assert!((volume_d_t(1.0).unwrap() - 0.0471975511965976).abs() < 1e-15);
        for t in [1.0, 1.5, 3.0, 100.0] {
            assert!((volume_d_t_quadrature(t, &cfg()).unwrap() - volume_d_t(t).unwrap()).abs() < 1e-12);
        }
        assert!((volume_d_t(1e12).unwrap() - PI / 3.0).abs() < 1e-11);
        assert!(volume_d_t(0.9).is_err());
    }
}
