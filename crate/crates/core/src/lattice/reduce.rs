//! Exact Gauss reduction of rank-2 lattices to the modular fundamental domain.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::Lattice;
use crate::eis2::UpperHalfPoint;
use crate::linalg;
use crate::{Error, Rational, Result};

/// `L = scale * Lambda_z` up to rotation, with `Lambda_z` of covolume one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiPoint {
    pub z: UpperHalfPoint,
    pub scale: f64,
}

fn round_ties_to_zero(q: &Rational) -> Rational {
    let frac = q - q.trunc();
    if frac.abs() == Ratio::new(1.into(), 2.into()) {
        q.trunc()
    } else {
        q.round()
    }
}

/// Reduced Gram `(a, b, c)` with `|2b| <= a <= c`, using only orientation
/// preserving moves.
pub(crate) fn gauss_reduce(mut a: Rational, mut b: Rational, mut c: Rational) -> (Rational, Rational, Rational) {
    loop {
        let m = round_ties_to_zero(&(&b / &a));
        if !m.is_zero() {
            c = &c - (&m * &b) * Rational::from_integer(2.into()) + &m * &m * &a;
            b = &b - &m * &a;
        }
        if c < a {
            core::mem::swap(&mut a, &mut c);
            b = -b;
        } else {
            return (a, b, c);
        }
    }
}

pub fn minkowski_point(lattice: &Lattice) -> Result<MinkowskiPoint> {
    if lattice.rank() != 2 {
        return Err(Error::Domain("minkowski_point needs a rank-2 lattice".into()));
    }
    let g = lattice.gram();
    let (a, mut b, c) = gauss_reduce(g[0][0].clone(), g[0][1].clone(), g[1][1].clone());
    match lattice.orientation() {
        Some(o) if o < 0 => b = -b,
        Some(_) => {}
        None => b = b.abs(),
    }
    let half = Rational::new(1.into(), 2.into());
    if b.is_negative() && (b == -(&a * &half) || a == c) {
        b = -b;
    }
    let disc = &a * &c - &b * &b;
    let x = linalg::to_f64(&(&b / &a));
    let y = libm::exp(0.5 * linalg::ln_rational(&disc) - linalg::ln_rational(&a));
    let scale = libm::exp(0.25 * linalg::ln_rational(&disc));
    Ok(MinkowskiPoint { z: UpperHalfPoint { x, y }, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::NumericsConfig;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn standard_and_hexagonal() {
        let p = minkowski_point(&Lattice::standard(2)).unwrap();
        assert_eq!((p.z.x, p.z.y, p.scale), (0.0, 1.0, 1.0));
        let hex = Lattice::from_gram(vec![vec![rat(1), q(1, 2)], vec![q(1, 2), rat(1)]]).unwrap();
        let p = minkowski_point(&hex).unwrap();
        assert_eq!(p.z.x, 0.5);
        assert!((p.z.y - libm::sqrt(3.0) / 2.0).abs() < 1e-15);
        // the other Gram representative of the same point
        let hex2 = Lattice::from_gram(vec![vec![rat(1), q(-1, 2)], vec![q(-1, 2), rat(1)]]).unwrap();
        assert_eq!(minkowski_point(&hex2).unwrap(), p);
    }

    #[test]
    fn orientation_follows_basis() {
        // basis (1, 0), (x, y) with x = 1/3, y = 3/2
        let l = Lattice::from_basis(vec![vec![rat(1), rat(0)], vec![q(1, 3), q(3, 2)]]).unwrap();
        let p = minkowski_point(&l).unwrap();
        assert!((p.z.x - 1.0 / 3.0).abs() < 1e-15 && (p.z.y - 1.5).abs() < 1e-15);
        // same set of vectors, reversed basis order
        let m = Lattice::from_basis(vec![vec![q(1, 3), q(3, 2)], vec![rat(1), rat(0)]]).unwrap();
        assert_eq!(minkowski_point(&m).unwrap(), p);
        let mirror = Lattice::from_basis(vec![vec![rat(1), rat(0)], vec![q(-1, 3), q(3, 2)]]).unwrap();
        assert!((minkowski_point(&mirror).unwrap().z.x + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_other_ranks() {
        assert!(minkowski_point(&Lattice::standard(3)).is_err());
    }

    proptest! {
        #[test]
        fn lands_in_domain(e in proptest::collection::vec(-20i64..=20, 4), d in 1i64..=7) {
            let basis = vec![vec![q(e[0], d), q(e[1], 1)], vec![q(e[2], 1), q(e[3], d)]];
            prop_assume!(!linalg::det(&basis).is_zero());
            let l = Lattice::from_basis(basis).unwrap();
            let p = minkowski_point(&l).unwrap();
            prop_assert!(p.z.x.abs() <= 0.5 + 1e-15);
            prop_assert!(p.z.x * p.z.x + p.z.y * p.z.y >= 1.0 - 1e-12);
            let (lambda, _) = l.minimal_vectors(&NumericsConfig::default()).unwrap();
            let lambda1 = libm::sqrt(linalg::to_f64(&lambda)) / p.scale;
            prop_assert!((lambda1 - p.z.y.powf(-0.5)).abs() < 1e-10);
            prop_assert!((p.scale * p.scale - l.covolume()).abs() < 1e-10 * l.covolume());
        }
    }
}
