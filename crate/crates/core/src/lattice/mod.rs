//! Full-rank `Z`-lattices in `R^r` (`r <= 4`) with exact rational Gram data.

mod enumerate;
mod reduce;
mod theta;

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::{Error, NumericsConfig, Rational, Result};

pub(crate) use enumerate::Enumerator;
pub use reduce::{minkowski_point, MinkowskiPoint};
pub use theta::{riemann_roch, theta_h0, theta_h1, CohomologyReport};

pub const MAX_RANK: usize = 4;

/// A lattice given by a rational basis (rows) or, for irrational embeddings such
/// as the hexagonal lattice, by its rational Gram matrix alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    basis: Option<RatMatrix>,
    gram: RatMatrix,
}

/// A nonzero lattice vector in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: Rational,
}

impl Lattice {
    pub fn from_basis(basis: RatMatrix) -> Result<Self> {
        let r = basis.len();
        check_shape(&basis)?;
        if linalg::det(&basis).is_zero() {
            return Err(Error::SingularBasis);
        }
        let gram = linalg::gram_of_rows(&basis);
        debug_assert!(r <= MAX_RANK);
        Ok(Self { basis: Some(basis), gram })
    }

    pub fn from_gram(gram: RatMatrix) -> Result<Self> {
        check_shape(&gram)?;
        let r = gram.len();
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
                }
            }
        }
        if !linalg::is_positive_definite(&gram) {
            return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
        }
        Ok(Self { basis: None, gram })
    }

    /// `Z^r` with the standard basis.
    pub fn standard(rank: usize) -> Self {
        Self::from_basis(linalg::identity(rank)).expect("identity basis")
    }

    /// Diagonal basis `diag(d_1, ..., d_r)`.
    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let r = entries.len();
        let basis = (0..r)
            .map(|i| (0..r).map(|j| if i == j { entries[i].clone() } else { Rational::zero() }).collect())
            .collect();
        Self::from_basis(basis)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn basis(&self) -> Option<&RatMatrix> {
        self.basis.as_ref()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn gram_f64(&self) -> Vec<Vec<f64>> {
        linalg::matrix_to_f64(&self.gram)
    }

    /// Exact `det(Gram) = covolume^2`.
    pub fn gram_det(&self) -> Rational {
        linalg::det(&self.gram)
    }

    pub fn covolume(&self) -> f64 {
        libm::exp(0.5 * linalg::ln_rational(&self.gram_det()))
    }

    /// Arakelov degree `-log covolume`.
    pub fn degree(&self) -> f64 {
        -0.5 * linalg::ln_rational(&self.gram_det())
    }

    /// Orientation of the basis, if the lattice carries one.
    pub fn orientation(&self) -> Option<i8> {
        self.basis.as_ref().map(|b| if linalg::det(b).is_positive() { 1 } else { -1 })
    }

    /// Dual lattice: inverse-transpose basis, inverse Gram.
    pub fn dual(&self) -> Self {
        let gram = linalg::inverse(&self.gram).expect("Gram matrix is nonsingular");
        let basis = self.basis.as_ref().map(|b| linalg::transpose(&linalg::inverse(b).expect("basis is nonsingular")));
        Self { basis, gram }
    }

    /// `t L` for a positive rational `t`.
    pub fn scaled(&self, t: &Rational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::Domain("scale factor must be positive".into()));
        }
        let t2 = t * t;
        Ok(Self {
            basis: self.basis.as_ref().map(|b| b.iter().map(|row| row.iter().map(|x| x * t).collect()).collect()),
            gram: self.gram.iter().map(|row| row.iter().map(|x| x * &t2).collect()).collect(),
        })
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.rank(), other.rank());
        if a + b > MAX_RANK {
            return Err(Error::InvalidLattice("direct sum exceeds rank 4".into()));
        }
        let block = |x: &RatMatrix, y: &RatMatrix| -> RatMatrix {
            let mut out = alloc::vec![alloc::vec![Rational::zero(); a + b]; a + b];
            for i in 0..a {
                for j in 0..a {
                    out[i][j] = x[i][j].clone();
                }
            }
            for i in 0..b {
                for j in 0..b {
                    out[a + i][a + j] = y[i][j].clone();
                }
            }
            out
        };
        match (&self.basis, &other.basis) {
            (Some(x), Some(y)) => Self::from_basis(block(x, y)),
            _ => Self::from_gram(block(&self.gram, &other.gram)),
        }
    }

    /// The sublattice generated by integer coordinate rows (Gram-backed).
    pub fn sublattice(&self, generators: &[Vec<i64>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != self.rank()) {
            return Err(Error::InvalidLattice("generator length differs from rank".into()));
        }
        let gram = linalg::restrict_gram(&self.gram, generators);
        if gram.is_empty() || linalg::det(&gram).is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Self { basis: None, gram })
    }

    /// `|x|^2` of the vector with coordinates `x`.
    pub fn norm(&self, coords: &[i64]) -> Rational {
        linalg::quad_form(&self.gram, coords)
    }

    /// Row Hermite normal form of the basis after clearing denominators, together
    /// with the common denominator. Equal outputs mean equal lattices in `Q^r`.
    pub fn hermite_normal_form(&self) -> Option<(IntMatrix, BigInt)> {
        let basis = self.basis.as_ref()?;
        let den = basis.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: IntMatrix = basis
            .iter()
            .map(|row| row.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        Some((linalg::hermite_normal_form(&ints), den))
    }

    /// All nonzero `x` with `|x|^2 <= norm_bound`, one per `+-` pair (first nonzero
    /// coordinate positive), sorted by norm and then lexicographically.
    pub fn short_vectors(&self, norm_bound: f64, cfg: &NumericsConfig) -> Result<Vec<ShortVector>> {
        if !(norm_bound > 0.0) || !norm_bound.is_finite() {
            return Err(Error::Domain("norm bound must be positive".into()));
        }
        let bound = Rational::from_float(norm_bound).ok_or_else(|| Error::Domain(norm_bound.to_string()))?;
        let slack = norm_bound * (1.0 + 1e-9) + 1e-12;
        let en = Enumerator::new(self)?;
        let mut out = Vec::new();
        en.for_each(slack, cfg.vector_budget, |coords, _| {
            if canonical_sign(coords) {
                let norm = self.norm(coords);
                if norm <= bound {
                    out.push(ShortVector { coords: coords.to_vec(), norm });
                }
            }
        })?;
        out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.coords.cmp(&b.coords)));
        Ok(out)
    }

    /// First minimum `lambda_1^2` and all vectors attaining it (one per sign pair).
    pub fn minimal_vectors(&self, cfg: &NumericsConfig) -> Result<(Rational, Vec<Vec<i64>>)> {
        let en = Enumerator::new(self)?;
        let first = en.shortest_norm_upper_bound();
        let vs = self.short_vectors(first, cfg)?;
        let min = vs[0].norm.clone();
        let coords = vs.into_iter().take_while(|v| v.norm == min).map(|v| v.coords).collect();
        Ok((min, coords))
    }
}

fn check_shape(m: &RatMatrix) -> Result<()> {
    let r = m.len();
    if r == 0 || r > MAX_RANK {
        return Err(Error::InvalidLattice(alloc::format!("rank must be in 1..=4, got {r}")));
    }
    if m.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidLattice("matrix is not square".into()));
    }
    Ok(())
}

/// First nonzero coordinate positive.
pub(crate) fn canonical_sign(x: &[i64]) -> bool {
    x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub(crate) fn is_primitive_vector(x: &[i64]) -> bool {
    x.iter().fold(0i64, |g, &c| gcd_i64(g, c)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn covolume_and_degree() {
        let z3 = Lattice::standard(3);
        assert_eq!(z3.covolume(), 1.0);
        assert_eq!(z3.degree(), 0.0);
        let two = Lattice::diagonal(&[rat(2)]).unwrap();
        assert!((two.degree() + core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn degree_matches_fraction_free_determinant() {
        // Bareiss elimination on the integerized basis as an independent route
        let basis =
            vec![vec![q(1, 2), rat(2), q(-3, 4)], vec![rat(0), q(5, 3), rat(1)], vec![rat(-2), q(1, 3), q(7, 4)]];
        let l = Lattice::from_basis(basis.clone()).unwrap();
        let scale = 12i128;
        let mut m: Vec<Vec<i128>> = basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * Rational::from_integer(12.into());
                        i128::try_from(v.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect();
        let n = 3;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        let det = m[2][2] as f64 / (scale as f64).powi(3);
        assert!((l.degree() + det.abs().ln()).abs() < 1e-13);
    }

    #[test]
    fn dual_properties() {
        let z2 = Lattice::standard(2);
        assert_eq!(z2.dual(), z2);
        let l = Lattice::from_basis(vec![vec![q(3, 2), rat(1)], vec![q(-1, 3), rat(2)]]).unwrap();
        let d = l.dual();
        assert!((d.degree() + l.degree()).abs() < 1e-14);
        assert!((d.covolume() * l.covolume() - 1.0).abs() < 1e-14);
        assert_eq!(d.dual().hermite_normal_form(), l.hermite_normal_form());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Lattice::from_basis(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]), Err(Error::SingularBasis));
        assert!(Lattice::from_gram(vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]]).is_err());
        assert!(Lattice::from_gram(vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]]).is_err());
        assert!(Lattice::standard(1).direct_sum(&Lattice::standard(4)).is_err());
    }

    #[test]
    fn short_vectors_of_z2() {
        let cfg = NumericsConfig::default();
        let z2 = Lattice::standard(2);
        let v1: Vec<_> = z2.short_vectors(1.0, &cfg).unwrap().into_iter().map(|v| v.coords).collect();
        assert_eq!(v1, vec![vec![0, 1], vec![1, 0]]);
        let v2: Vec<_> = z2.short_vectors(2.0, &cfg).unwrap().into_iter().map(|v| v.coords).collect();
        // brute force over the box [-2, 2]^2
        let mut brute = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                if (a, b) != (0, 0) && a * a + b * b <= 2 && canonical_sign(&[a, b]) {
                    brute.push(vec![a, b]);
                }
            }
        }
        brute.sort_by_key(|v| (v[0] * v[0] + v[1] * v[1], v.clone()));
        assert_eq!(v2, brute);
        assert_eq!(v2.len(), 4);
    }

    #[test]
    fn hexagonal_minimal_vectors() {
        let cfg = NumericsConfig::default();
        let hex = Lattice::from_gram(vec![vec![rat(1), q(1, 2)], vec![q(1, 2), rat(1)]]).unwrap();
        let (min, vs) = hex.minimal_vectors(&cfg).unwrap();
        assert_eq!(min, rat(1));
        assert_eq!(vs.len(), 3);
        let mut brute = 0;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if (a, b) != (0, 0) && canonical_sign(&[a, b]) && hex.norm(&[a, b]) == rat(1) {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 3);
    }
}
