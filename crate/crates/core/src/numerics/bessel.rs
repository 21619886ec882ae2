#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex, Error, NumericsConfig, Result};

/// Value of `K_nu(y)` together with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselK {
    pub value: Complex,
    /// Set when `|K_nu(y)|` is below the smallest normal double; `value` is then 0.
    pub underflow: bool,
}

/// Modified Bessel function `K_nu(y) = int_0^inf exp(-y cosh u) cosh(nu u) du`, `y > 0`.
///
/// Trapezoidal rule on the half line. The integrand is entire and decays
/// doubly exponentially, so the rule converges geometrically in `1/h`. The
/// factor `exp(-y)` is pulled out so the sum is accumulated at unit scale.
pub fn k_bessel(nu: Complex, y: f64, cfg: &NumericsConfig) -> Result<BesselK> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(alloc::format!("K-Bessel needs y > 0, got {y}")));
    }
    let h = 0.05;
    let peak = (nu.re.abs() / y).asinh();
    let stop = cfg.abs_tol.min(1e-16) * 1e-2;
    let mut sum = Complex::new(0.5, 0.0) * kernel(nu, y, 0.0);
    let mut k = 1u32;
    loop {
        let u = k as f64 * h;
        let term = kernel(nu, y, u);
        sum += term;
        if u > peak && term.norm() <= stop * sum.norm() {
            break;
        }
        if k > 200_000 {
            return Err(Error::NonConvergence(k as usize));
        }
        k += 1;
    }
    let scaled = sum * h;
    let log_mag = scaled.norm().ln() - y;
    if log_mag < f64::MIN_POSITIVE.ln() {
        return Ok(BesselK { value: Complex::new(0.0, 0.0), underflow: true });
    }
    Ok(BesselK { value: scaled * (-y).exp(), underflow: false })
}

#[inline]
fn kernel(nu: Complex, y: f64, u: f64) -> Complex {
    // exp(-y (cosh u - 1)) cosh(nu u), with cosh u - 1 = 2 sinh^2(u/2)
    let s = (0.5 * u).sinh();
    let damp = (-2.0 * y * s * s).exp();
    if damp == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    let a = nu.re * u;
    let b = nu.im * u;
    Complex::new(a.cosh() * b.cos(), a.sinh() * b.sin()) * damp
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn k(nu: Complex, y: f64) -> Complex {
        k_bessel(nu, y, &NumericsConfig::default()).unwrap().value
    }

    #[test]
    fn half_integer_closed_form() {
        let v = k(Complex::new(0.5, 0.0), 2.0);
        let closed = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!((v.re - closed).abs() < 1e-10 * closed && v.im.abs() < 1e-16);
        assert!((v.re - 0.119_937_7).abs() < 1e-7);
        for y in [0.1, 0.7, 3.0, 11.0, 40.0] {
            let closed = (PI / (2.0 * y)).sqrt() * (-y).exp();
            let v = k(Complex::new(0.5, 0.0), y);
            assert!((v.re - closed).abs() <= 1e-10 * closed, "y = {y}");
            // K_{3/2}(y) = K_{1/2}(y) (1 + 1/y)
            let v = k(Complex::new(1.5, 0.0), y);
            assert!((v.re - closed * (1.0 + 1.0 / y)).abs() <= 1e-10 * closed * (1.0 + 1.0 / y));
        }
    }

    #[test]
    fn order_zero_at_one() {
        // power series K_0(y) = -(ln(y/2) + gamma) I_0(y) + sum (y^2/4)^k / (k!)^2 H_k
        let y: f64 = 1.0;
        let q = y * y / 4.0;
        let euler = 0.577_215_664_901_532_9;
        let (mut i0, mut tail) = (0.0, 0.0);
        let (mut term, mut harmonic) = (1.0, 0.0);
        for k in 0..30 {
            if k > 0 {
                term *= q / (k * k) as f64;
                harmonic += 1.0 / k as f64;
            }
            i0 += term;
            tail += term * harmonic;
        }
        let oracle = -((y / 2.0).ln() + euler) * i0 + tail;
        let v = k(Complex::new(0.0, 0.0), 1.0);
        assert!((v.re - oracle).abs() < 1e-12);
        assert!((v.re - 0.421_024_438_240_708_3).abs() < 1e-12);
    }

    #[test]
    fn even_in_order() {
        let nu = Complex::new(0.3, 0.7);
        let d = k(nu, 1.0) - k(-nu, 1.0);
        assert!(d.norm() < 1e-15);
        assert!(k(nu, 1.0).norm() > 0.1);
    }

    #[test]
    fn underflow_is_flagged() {
        let r = k_bessel(Complex::new(0.0, 0.0), 800.0, &NumericsConfig::default()).unwrap();
        assert!(r.underflow);
        assert_eq!(r.value, Complex::new(0.0, 0.0));
        let r = k_bessel(Complex::new(0.0, 0.0), 600.0, &NumericsConfig::default()).unwrap();
        assert!(!r.underflow && r.value.re > 0.0);
        assert!(k_bessel(Complex::new(0.0, 0.0), -1.0, &NumericsConfig::default()).is_err());
    }
}
