//! Complex special functions shared by every evaluator.
//!
//! All complex powers in this crate have positive real bases and are computed as
//! `exp(s * ln u)` with the real logarithm, see [`pow_real`].

mod bessel;
mod divisor;
mod gamma;
mod quadrature;
mod xi;

pub use bessel::{k_bessel, BesselK};
pub use divisor::sigma_divisor;
pub use gamma::{gamma_complex, ln_gamma_complex};
pub use quadrature::GaussLegendre;
pub use xi::{theta_tail, xi_completed};

use crate::{Complex, Error, NumericsConfig, Result};

/// `u^s` for a positive real base.
#[inline]
pub fn pow_real(u: f64, s: Complex) -> Complex {
    debug_assert!(u > 0.0);
    (s * libm::log(u)).exp()
}

/// Refuses `s` if it lies within the guard radius of any of `poles`.
pub(crate) fn guard(s: Complex, poles: &[f64], cfg: &NumericsConfig) -> Result<()> {
    for &p in poles {
        let pole = Complex::new(p, 0.0);
        if (s - pole).norm() < cfg.pole_guard_radius {
            return Err(Error::PoleProximity { at: s, pole });
        }
    }
    Ok(())
}

/// Guard for `Gamma`: non-positive integers.
pub(crate) fn guard_nonpositive_integers(s: Complex, cfg: &NumericsConfig) -> Result<()> {
    if s.re < 0.5 {
        let n = libm::round(s.re);
        if n <= 0.0 {
            return guard(s, &[n], cfg);
        }
    }
    Ok(())
}
