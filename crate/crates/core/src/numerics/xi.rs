use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::{guard, pow_real, GaussLegendre};
use crate::{Complex, NumericsConfig, Result};

/// `omega(u) = sum_{n >= 1} exp(-pi n^2 u)` for `u > 0`.
pub fn theta_tail(u: f64) -> f64 {
    let mut sum = 0.0;
    let mut n = 1u64;
    loop {
        let term = (-PI * (n * n) as f64 * u).exp();
        sum += term;
        if term < 1e-18 * sum || term == 0.0 {
            break;
        }
        n += 1;
    }
    sum
}

/// Completed Riemann zeta `pi^{-s/2} Gamma(s/2) zeta(s)`.
///
/// Evaluated through the theta integral folded onto `[1, inf)`:
///
/// `xi(s) = -1/s - 1/(1-s) + int_1^inf omega(u) (u^{s/2} + u^{(1-s)/2}) du/u`,
///
/// which is invariant under `s -> 1 - s` term by term.
pub fn xi_completed(s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    guard(s, &[0.0, 1.0], cfg)?;
    Ok(xi_unguarded(s))
}

pub(crate) fn xi_unguarded(s: Complex) -> Complex {
    let a = 0.5 * s;
    let b = 0.5 * (1.0 - s);
    let growth = a.re.max(b.re).max(0.0);
    // tail of int_U^inf e^{-pi u} u^{growth - 1} du stays below 1e-18
    let mut upper = 2.0f64;
    while (-PI * upper).exp() * upper.powf(growth) > 1e-18 {
        upper += 1.0;
    }
    let rule = GaussLegendre::new(20);
    let mut integral = Complex::new(0.0, 0.0);
    let mut lo = 1.0;
    while lo < upper {
        let hi = lo + 1.0;
        for (u, w) in rule.mapped(lo, hi) {
            let weight = theta_tail(u) * w / u;
            integral += (pow_real(u, a) + pow_real(u, b)) * weight;
        }
        lo = hi;
    }
    let one = Complex::new(1.0, 0.0);
    integral - one / s - one / (one - s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_series(s: f64) -> f64 {
        // direct series with an integral tail estimate, s >= 2
        let n_max = 200_000u64;
        let mut sum = 0.0;
        for n in (1..=n_max).rev() {
            sum += (n as f64).powf(-s);
        }
        let n = n_max as f64 + 0.5;
        sum + n.powf(1.0 - s) / (s - 1.0)
    }

    #[test]
    fn xi_two_is_pi_over_six() {
        let cfg = NumericsConfig::default();
        let oracle = PI.powf(-1.0) * zeta_series(2.0);
        let v = xi_completed(Complex::new(2.0, 0.0), &cfg).unwrap();
        assert!((v.re - oracle).abs() < 1e-10 && v.im.abs() < 1e-15);
        assert!((v.re - PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn xi_three_against_series() {
        let cfg = NumericsConfig::default();
        let oracle = PI.powf(-1.5) * 0.5 * PI.sqrt() * zeta_series(3.0);
        let v = xi_completed(Complex::new(3.0, 0.0), &cfg).unwrap();
        assert!((v.re - oracle).abs() < 1e-10, "{v} vs {oracle}");
    }

    #[test]
    fn symmetry_on_grid() {
        let cfg = NumericsConfig::default();
        for i in -8..=8 {
            for j in -4..=4 {
                let s = Complex::new(0.5 + i as f64 * 0.71, j as f64 * 1.3);
                if (s - 1.0).norm() < 0.05 || s.norm() < 0.05 {
                    continue;
                }
                let d = xi_completed(s, &cfg).unwrap() - xi_completed(1.0 - s, &cfg).unwrap();
                assert!(d.norm() < 1e-10, "s = {s}");
            }
        }
        let d =
            xi_completed(Complex::new(3.0, 0.0), &cfg).unwrap() - xi_completed(Complex::new(-2.0, 0.0), &cfg).unwrap();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn residue_at_one() {
        let cfg = NumericsConfig::default();
        let h = 1e-5;
        let v = xi_completed(Complex::new(1.0 + h, 0.0), &cfg).unwrap() * h;
        assert!((v.re - 1.0).abs() < 1e-4);
    }

    #[test]
    fn refuses_poles() {
        let cfg = NumericsConfig::default();
        assert!(xi_completed(Complex::new(1.0, 1e-9), &cfg).is_err());
        assert!(xi_completed(Complex::new(0.0, 0.0), &cfg).is_err());
    }
}
