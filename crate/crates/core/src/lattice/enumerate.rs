//! LLL preconditioning and Fincke-Pohst enumeration on a floating Gram matrix.

use alloc::vec;
use alloc::vec::Vec;

use super::Lattice;
use crate::{Error, Result};

const LLL_DELTA: f64 = 0.99;
const LLL_MAX_STEPS: usize = 10_000;

/// Enumeration data: unimodular `u` with reduced rows `u * basis`, and the
/// Gram-Schmidt data of the reduced Gram matrix.
pub(crate) struct Enumerator {
    r: usize,
    u: Vec<Vec<i64>>,
    mu: Vec<Vec<f64>>,
    bstar: Vec<f64>,
}

fn gso(g: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let r = g.len();
    let mut mu = vec![vec![0.0; r]; r];
    let mut b = vec![0.0; r];
    for i in 0..r {
        for j in 0..i {
            let mut s = g[i][j];
            for k in 0..j {
                s -= mu[j][k] * mu[i][k] * b[k];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = g[i][i];
        for k in 0..i {
            s -= mu[i][k] * mu[i][k] * b[k];
        }
        mu[i][i] = 1.0;
        b[i] = s;
    }
    (mu, b)
}

fn transform(g0: &[Vec<f64>], u: &[Vec<i64>]) -> Vec<Vec<f64>> {
    let r = g0.len();
    let mut g = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = 0.0;
            for a in 0..r {
                if u[i][a] == 0 {
                    continue;
                }
                for b in 0..r {
                    s += u[i][a] as f64 * g0[a][b] * u[j][b] as f64;
                }
            }
            g[i][j] = s;
        }
    }
    g
}

impl Enumerator {
    pub(crate) fn new(lattice: &Lattice) -> Result<Self> {
        let g0 = lattice.gram_f64();
        let r = g0.len();
        let mut u: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let mut k = 1;
        let mut steps = 0;
        while k < r {
            steps += 1;
            if steps > LLL_MAX_STEPS {
                return Err(Error::NonConvergence(steps));
            }
            for j in (0..k).rev() {
                let (mu, _) = gso(&transform(&g0, &u));
                let m = libm::round(mu[k][j]);
                if m != 0.0 {
                    if m.abs() > 1e15 {
                        return Err(Error::InvalidLattice("basis too ill-conditioned to reduce".into()));
                    }
                    let m = m as i64;
                    for c in 0..r {
                        u[k][c] -= m * u[j][c];
                    }
                }
            }
            let (mu, b) = gso(&transform(&g0, &u));
            if b[k] >= (LLL_DELTA - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
                k += 1;
            } else {
                u.swap(k, k - 1);
                k = (k - 1).max(1);
            }
        }
        let (mu, bstar) = gso(&transform(&g0, &u));
        if bstar.iter().any(|&b| !(b > 0.0) || !b.is_finite()) {
            return Err(Error::InvalidLattice("Gram matrix is numerically singular".into()));
        }
        Ok(Self { r, u, mu, bstar })
    }

    /// Squared Gram-Schmidt lengths of the reduced basis.
    pub(crate) fn bstar(&self) -> &[f64] {
        &self.bstar
    }

    /// `|b_1|^2` of the reduced basis, an upper bound for the first minimum.
    pub(crate) fn shortest_norm_upper_bound(&self) -> f64 {
        let g = (0..self.r).map(|i| {
            let mut s = self.bstar[i];
            for k in 0..i {
                s += self.mu[i][k] * self.mu[i][k] * self.bstar[k];
            }
            s
        });
        g.fold(f64::INFINITY, f64::min) * (1.0 + 1e-9)
    }

    /// Calls `f(coords, norm)` for every nonzero vector (both signs) with
    /// floating norm at most `bound`, coordinates in the original basis.
    pub(crate) fn for_each<F: FnMut(&[i64], f64)>(&self, bound: f64, budget: usize, mut f: F) -> Result<usize> {
        let r = self.r;
        let mut x = vec![0i64; r];
        let mut orig = vec![0i64; r];
        let mut count = 0usize;
        // partial[i] = squared length contributed by coordinates i..r
        let mut partial = vec![0.0f64; r + 1];
        let mut center = vec![0.0f64; r];
        let mut level = r - 1;
        let init = |level: usize, x: &[i64], partial: &[f64], center: &mut [f64], bstar: &[f64], mu: &[Vec<f64>]| {
            let mut c = 0.0;
            for j in level + 1..r {
                c -= x[j] as f64 * mu[j][level];
            }
            center[level] = c;
            let rem = (bound - partial[level + 1]).max(0.0);
            let w = libm::sqrt(rem / bstar[level]);
            (libm::ceil(c - w - 1e-12) as i64, libm::floor(c + w + 1e-12) as i64)
        };
        let mut hi = vec![0i64; r];
        let (lo0, hi0) = init(level, &x, &partial, &mut center, &self.bstar, &self.mu);
        x[level] = lo0;
        hi[level] = hi0;
        loop {
            if x[level] > hi[level] {
                if level == r - 1 {
                    break;
                }
                level += 1;
                x[level] += 1;
                continue;
            }
            let d = x[level] as f64 - center[level];
            let val = partial[level + 1] + d * d * self.bstar[level];
            if val > bound * (1.0 + 1e-12) + 1e-300 {
                x[level] += 1;
                continue;
            }
            partial[level] = val;
            if level == 0 {
                if x.iter().any(|&c| c != 0) {
                    count += 1;
                    if count > budget {
                        return Err(Error::EnumerationOverflow { budget });
                    }
                    for (c, o) in orig.iter_mut().enumerate() {
                        *o = (0..r).map(|i| x[i] * self.u[i][c]).sum();
                    }
                    f(&orig, val);
                }
                x[0] += 1;
            } else {
                level -= 1;
                let (lo, h) = init(level, &x, &partial, &mut center, &self.bstar, &self.mu);
                x[level] = lo;
                hi[level] = h;
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, rat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn brute(l: &Lattice, bound: f64) -> Vec<Vec<i64>> {
        let r = l.rank();
        let g = l.gram_f64();
        let ginv = linalg::matrix_to_f64(&l.dual().gram().clone());
        // |x_i| <= |b_i^*| |v| by Cauchy-Schwarz against the dual basis
        let box_ = (0..r).map(|i| libm::sqrt(ginv[i][i] * bound)).fold(0.0, f64::max) as i64 + 1;
        let side = 2 * box_ + 1;
        let mut out = Vec::new();
        for idx in 0..side.pow(r as u32) {
            let mut t = idx;
            let v: Vec<i64> = (0..r)
                .map(|_| {
                    let c = t % side - box_;
                    t /= side;
                    c
                })
                .collect();
            let n: f64 = (0..r).map(|i| (0..r).map(|j| v[i] as f64 * g[i][j] * v[j] as f64).sum::<f64>()).sum();
            if v.iter().any(|&c| c != 0) && n <= bound * (1.0 - 1e-9) {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    fn enumerate(l: &Lattice, bound: f64) -> Vec<Vec<i64>> {
        let en = Enumerator::new(l).unwrap();
        let mut got = Vec::new();
        en.for_each(bound * (1.0 - 1e-9), 1_000_000, |c, _| got.push(c.to_vec())).unwrap();
        got.sort();
        got
    }

    #[test]
    fn skewed_basis_enumeration() {
        let l = Lattice::from_basis(vec![vec![rat(1), rat(0)], vec![rat(7), rat(1)]]).unwrap();
        assert_eq!(enumerate(&l, 2.5), brute(&l, 2.5));
    }

    #[test]
    fn budget_overflow() {
        let en = Enumerator::new(&Lattice::standard(3)).unwrap();
        assert_eq!(en.for_each(100.0, 10, |_, _| {}), Err(Error::EnumerationOverflow { budget: 10 }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_brute_force(entries in proptest::collection::vec(-3i64..=3, 9), bound in 0.5f64..6.0) {
            let basis: Vec<Vec<_>> = entries.chunks(3).map(|row| row.iter().map(|&e| rat(e)).collect()).collect();
            prop_assume!(!linalg::det(&basis).is_zero());
            let l = Lattice::from_basis(basis).unwrap();
            prop_assert_eq!(enumerate(&l, bound), brute(&l, bound));
        }
    }
}
