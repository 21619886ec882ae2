//! Seeded random lattices and flags for the verification suites.

use nazeta_core::lattice::Lattice;
use nazeta_core::stability::Flag;
use nazeta_core::Rational;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

/// Basis with entries `k/2`, `k` in `[-6, 6]`, so in `[-3, 3]`; retried until
/// the Gram determinant is at least `1/16`.
pub fn lattice(rng: &mut StdRng, rank: usize) -> Lattice {
    loop {
        let basis: Vec<Vec<Rational>> = (0..rank)
            .map(|_| (0..rank).map(|_| Rational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(2))).collect())
            .collect();
        if let Ok(l) = Lattice::from_basis(basis) {
            if l.gram_det() >= Rational::new(1.into(), 16.into()) {
                return l;
            }
        }
    }
}

/// Product of random elementary operations; determinant one.
pub fn unimodular(rng: &mut StdRng, rank: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    if rank < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..rank);
        let j = (i + rng.gen_range(1..rank)) % rank;
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        let row = m[j].clone();
        for (a, b) in m[i].iter_mut().zip(row) {
            *a += e * b;
        }
    }
    m
}

/// Steps are the first `k` rows of a random unimodular matrix, for a random
/// increasing set of `k` ending at the rank.
pub fn flag(rng: &mut StdRng, rank: usize) -> Flag {
    let u = unimodular(rng, rank, 4 * rank);
    let mut steps = Vec::new();
    for k in 1..rank {
        if rng.gen_bool(0.5) {
            steps.push(u[..k].to_vec());
        }
    }
    steps.push(u);
    Flag { steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn unimodular_has_determinant_one() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let m = unimodular(&mut rng, 3, 9);
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            assert_eq!(det, 1);
        }
    }

    #[test]
    fn flags_end_at_full_rank() {
        let mut rng = StdRng::seed_from_u64(4);
        for rank in 1..5 {
            let f = flag(&mut rng, rank);
            assert_eq!(f.ranks().last(), Some(&rank));
            let l = lattice(&mut rng, rank);
            assert_eq!(l.rank(), rank);
        }
    }
}
