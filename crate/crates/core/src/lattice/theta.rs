//! Theta-series cohomology `h0`, `h1` and the Riemann-Roch defect.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

use super::{Enumerator, Lattice};
use crate::{NumericsConfig, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CohomologyReport {
    pub h0: f64,
    pub h1: f64,
    pub degree: f64,
    pub rr_defect: f64,
}

/// Smallest radius `R` (on a grid of step 1/8) such that the shell bound
/// `sum_k exp(-pi (R+k)^2) * prod_i (2 (R+k+1) / |b_i^*| + 1)` is below `eps`.
fn truncation_radius(bstar: &[f64], eps: f64) -> f64 {
    let count = |rho: f64| bstar.iter().map(|&b| 2.0 * rho / libm::sqrt(b) + 1.0).product::<f64>();
    let tail =
        |r: f64| (0..64).map(|k| libm::exp(-PI * (r + k as f64).powi(2)) * count(r + k as f64 + 1.0)).sum::<f64>();
    let mut r = 0.5;
    while tail(r) >= eps {
        r += 0.125;
    }
    r
}

/// `h0(L) = log sum_{x in L} exp(-pi |x|^2)`.
pub fn theta_h0(lattice: &Lattice, cfg: &NumericsConfig) -> Result<f64> {
    let en = Enumerator::new(lattice)?;
    let radius = truncation_radius(en.bstar(), cfg.abs_tol * 1e-3);
    let mut terms = alloc::vec::Vec::new();
    en.for_each(radius * radius, cfg.vector_budget, |_, norm| terms.push(norm))?;
    // smallest terms first
    terms.sort_by(|a, b| b.total_cmp(a));
    let s: f64 = terms.iter().map(|&n| libm::exp(-PI * n)).sum();
    Ok(libm::log1p(s))
}

/// `h1(L) = h0(L^*)`.
pub fn theta_h1(lattice: &Lattice, cfg: &NumericsConfig) -> Result<f64> {
    theta_h0(&lattice.dual(), cfg)
}

pub fn riemann_roch(lattice: &Lattice, cfg: &NumericsConfig) -> Result<CohomologyReport> {
    let h0 = theta_h0(lattice, cfg)?;
    let h1 = theta_h1(lattice, cfg)?;
    let degree = lattice.degree();
    Ok(CohomologyReport { h0, h1, degree, rr_defect: h0 - h1 - degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::Rational;
    use alloc::vec;
    use alloc::vec::Vec;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn direct_1d(t: f64) -> f64 {
        libm::log(1.0 + 2.0 * (1..=10).map(|n| libm::exp(-PI * (t * n as f64).powi(2))).sum::<f64>())
    }

    #[test]
    fn rank_one_values() {
        let cfg = NumericsConfig::default();
        let z = Lattice::standard(1);
        let h = theta_h0(&z, &cfg).unwrap();
        assert!((h - 0.0829015200310547).abs() < 1e-15);
        assert!((h - direct_1d(1.0)).abs() < 1e-15);
        let two = Lattice::diagonal(&[rat(2)]).unwrap();
        let h2 = theta_h0(&two, &cfg).unwrap();
        assert!((h2 - 6.97466038941767e-6).abs() < 1e-18);
        assert!((theta_h1(&two, &cfg).unwrap() - direct_1d(0.5)).abs() < 1e-14);
        let three = Lattice::diagonal(&[rat(3)]).unwrap();
        let rr = riemann_roch(&three, &cfg).unwrap();
        assert!((rr.h0 - direct_1d(3.0)).abs() < 1e-15);
        assert!((rr.h1 - direct_1d(1.0 / 3.0)).abs() < 1e-13);
        assert!(rr.rr_defect.abs() < 1e-9);
    }

    #[test]
    fn self_dual_and_direct_sum() {
        let cfg = NumericsConfig::default();
        for r in 1..=4 {
            let rr = riemann_roch(&Lattice::standard(r), &cfg).unwrap();
            assert_eq!(rr.h0, rr.h1);
            assert!(rr.rr_defect.abs() < 1e-12);
        }
        let a = Lattice::from_basis(vec![vec![q(3, 2), rat(1)], vec![q(-1, 3), rat(2)]]).unwrap();
        let b = Lattice::diagonal(&[q(4, 5)]).unwrap();
        let s = a.direct_sum(&b).unwrap();
        let lhs = theta_h0(&s, &cfg).unwrap();
        let rhs = theta_h0(&a, &cfg).unwrap() + theta_h0(&b, &cfg).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn dual_theta_matches_inverse_transpose_sum() {
        let cfg = NumericsConfig::default();
        let basis = vec![vec![q(5, 4), q(1, 3)], vec![q(-2, 3), q(3, 2)]];
        let l = Lattice::from_basis(basis.clone()).unwrap();
        // direct theta of B^{-T} over a generous box
        let inv = crate::linalg::inverse(&basis).unwrap();
        let bt: Vec<Vec<f64>> = crate::linalg::matrix_to_f64(&crate::linalg::transpose(&inv));
        let mut s = 0.0;
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                let v0 = a as f64 * bt[0][0] + b as f64 * bt[1][0];
                let v1 = a as f64 * bt[0][1] + b as f64 * bt[1][1];
                s += libm::exp(-PI * (v0 * v0 + v1 * v1));
            }
        }
        assert!((theta_h1(&l, &cfg).unwrap() - libm::log(s)).abs() < 1e-13);
    }

    #[test]
    fn monotone_under_scaling() {
        let cfg = NumericsConfig::default();
        let l = Lattice::from_basis(vec![vec![q(3, 4), q(1, 5)], vec![q(-1, 2), q(6, 5)]]).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..8 {
            let t = q(8 + 3 * k, 8);
            let h = theta_h0(&l.scaled(&t).unwrap(), &cfg).unwrap();
            assert!(h < prev);
            prev = h;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn riemann_roch_defect(rank in 1usize..=3, entries in proptest::collection::vec(-3i64..=3, 9)) {
            let basis: Vec<Vec<Rational>> = (0..rank).map(|i| (0..rank).map(|j| rat(entries[3 * i + j])).collect()).collect();
            prop_assume!(!crate::linalg::det(&basis).is_zero());
            let rr = riemann_roch(&Lattice::from_basis(basis).unwrap(), &NumericsConfig::default()).unwrap();
            prop_assert!(rr.rr_defect.abs() < 1e-9, "{:?}", rr);
        }
    }
}
