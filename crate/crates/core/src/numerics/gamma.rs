use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::guard_nonpositive_integers;
use crate::{Complex, NumericsConfig, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: Complex) -> Complex {
    let mut x = Complex::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    x
}

/// `Gamma(s)` by the Lanczos approximation, reflected for `Re(s) < 1/2`.
pub fn gamma_complex(s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    guard_nonpositive_integers(s, cfg)?;
    Ok(gamma_unguarded(s))
}

pub(crate) fn gamma_unguarded(s: Complex) -> Complex {
    if s.re < 0.5 {
        let pi = Complex::new(PI, 0.0);
        pi / ((s * PI).sin() * gamma_unguarded(1.0 - s))
    } else {
        let z = s - 1.0;
        let t = z + LANCZOS_G + 0.5;
        let sqrt_two_pi = (2.0 * PI).sqrt();
        sqrt_two_pi * (t.ln() * (z + 0.5)).exp() * (-t).exp() * lanczos_sum(z)
    }
}

/// `log Gamma(s)` (principal branch pieces; `exp` of the result is `Gamma(s)`).
pub fn ln_gamma_complex(s: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    guard_nonpositive_integers(s, cfg)?;
    Ok(ln_gamma_unguarded(s))
}

fn ln_gamma_unguarded(s: Complex) -> Complex {
    if s.re < 0.5 {
        Complex::new(PI.ln(), 0.0) - (s * PI).sin().ln() - ln_gamma_unguarded(1.0 - s)
    } else {
        let z = s - 1.0;
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::GaussLegendre;
    use alloc::vec::Vec;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    /// Euler integral on panels, for `Re(s) >= 1` where the integrand is bounded.
    fn euler_integral(s: Complex) -> Complex {
        let rule = GaussLegendre::new(32);
        let mut acc = Complex::new(0.0, 0.0);
        // geometric panels towards the branch point at 0, unit panels after 1
        let mut edges: Vec<f64> = (0..60).rev().map(|k| 0.5f64.powi(k)).collect();
        edges.insert(0, 0.0);
        edges.extend((2..=80).map(|k| k as f64));
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            for (t, w) in rule.mapped(a, b) {
                acc += ((s - 1.0) * t.ln() - t).exp() * w;
            }
        }
        acc
    }

    #[test]
    fn classical_values() {
        let cfg = NumericsConfig::default();
        let g5 = gamma_complex(c(5.0, 0.0), &cfg).unwrap();
        assert!((g5 - 24.0).norm() < 1e-12);
        let half = gamma_complex(c(0.5, 0.0), &cfg).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-13 && half.im.abs() < 1e-15);
    }

    #[test]
    fn complex_value_against_euler_integral_and_reflection() {
        let cfg = NumericsConfig::default();
        let s = c(2.5, 1.0);
        let oracle = euler_integral(s);
        let value = gamma_complex(s, &cfg).unwrap();
        assert!((value - oracle).norm() / oracle.norm() < 1e-12, "{value} vs {oracle}");
        // frozen from the quadrature oracle above
        assert!((value - c(0.774_762_104_551_083_7, 0.707_631_204_379_592_6)).norm() < 1e-11);
        // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
        let refl = value * gamma_complex(1.0 - s, &cfg).unwrap();
        let expect = Complex::new(PI, 0.0) / (s * PI).sin();
        assert!((refl - expect).norm() / expect.norm() < 1e-12);
    }

    #[test]
    fn recurrence_on_grid() {
        let cfg = NumericsConfig::default();
        for i in -12..=12 {
            for j in -6..=6 {
                let s = c(i as f64 * 0.37 + 0.13, j as f64 * 0.8);
                let lhs = gamma_complex(s + 1.0, &cfg).unwrap();
                let rhs = s * gamma_complex(s, &cfg).unwrap();
                assert!((lhs - rhs).norm() / lhs.norm() < 1e-10, "s = {s}");
            }
        }
    }

    #[test]
    fn poles_are_refused() {
        let cfg = NumericsConfig::default();
        for p in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(gamma_complex(c(p + 1e-10, 0.0), &cfg), Err(crate::Error::PoleProximity { .. })));
        }
        assert!(gamma_complex(c(-2.0 + 1e-6, 0.0), &cfg).is_ok());
    }

    #[test]
    fn log_gamma_matches_gamma() {
        let cfg = NumericsConfig::default();
        for s in [c(3.3, 0.4), c(-1.7, 2.0), c(0.2, -5.0)] {
            let a = ln_gamma_complex(s, &cfg).unwrap().exp();
            let b = gamma_complex(s, &cfg).unwrap();
            assert!((a - b).norm() / b.norm() < 1e-12);
        }
    }
}
