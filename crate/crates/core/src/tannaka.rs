//! Parabolic bundles on `P^1` with marked points `inf, 1, 0`: exact tensor
//! products with weight reduction, decomposition against a library of
//! irreducibles, and the `S3` fusion table.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MarkedPoint {
    Infinity,
    One,
    Zero,
}

impl MarkedPoint {
    pub const ALL: [MarkedPoint; 3] = [MarkedPoint::Infinity, MarkedPoint::One, MarkedPoint::Zero];

    fn index(self) -> usize {
        self as usize
    }
}

/// Split bundle `O(d_1) + ... + O(d_r)` with a weight for every slot at every
/// marked point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicBundle {
    degrees: Vec<i64>,
    weights: [Vec<Rational>; 3],
}

/// Shorthand for `n / d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl ParabolicBundle {
    /// `weights[p][i]` is the weight of slot `i` at point `p` (order `inf, 1, 0`).
    pub fn new(degrees: Vec<i64>, weights: [Vec<Rational>; 3]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidBundle("rank must be positive".into()));
        }
        for w in &weights {
            if w.len() != degrees.len() {
                return Err(Error::InvalidBundle("each point needs one weight per slot".into()));
            }
            if w.iter().any(|x| x.is_negative() || *x >= Rational::one()) {
                return Err(Error::InvalidBundle("weights must lie in [0, 1)".into()));
            }
        }
        Ok(Self { degrees, weights })
    }

    /// `(O(d); w_inf; w_1; w_0)`.
    pub fn line(d: i64, w: [Rational; 3]) -> Result<Self> {
        let [a, b, c] = w;
        Self::new(vec![d], [vec![a], vec![b], vec![c]])
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn weights(&self, p: MarkedPoint) -> &[Rational] {
        &self.weights[p.index()]
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// `sum d_i + sum_p sum_i w_{p,i}`.
    pub fn par_degree(&self) -> Rational {
        self.weights.iter().flatten().fold(Rational::from_integer(self.degree().into()), |acc, w| acc + w)
    }

    /// Every weight has denominator dividing the exponent of its point.
    pub fn weights_divide(&self, exponents: [u32; 3]) -> bool {
        MarkedPoint::ALL.iter().all(|&p| {
            let e = BigInt::from(exponents[p.index()]);
            self.weights(p).iter().all(|w| (&e % w.denom()).is_zero())
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.degrees.extend_from_slice(&other.degrees);
        for (w, o) in out.weights.iter_mut().zip(&other.weights) {
            w.extend(o.iter().cloned());
        }
        out
    }

    /// Tensor product with the points reduced in the order `inf, 1, 0`.
    pub fn tensor(&self, other: &Self) -> Self {
        self.tensor_in_order(other, MarkedPoint::ALL)
    }

    /// Slots are all pairs `(i, j)` with degree `d_i + d'_j` and weights
    /// `w_i + w'_j`; then at each point in `order`, a slot whose weight is at
    /// least 1 loses 1 from the weight and gains 1 in degree until it is below 1.
    pub fn tensor_in_order(&self, other: &Self, order: [MarkedPoint; 3]) -> Self {
        let mut degrees = Vec::with_capacity(self.rank() * other.rank());
        let mut weights: [Vec<Rational>; 3] = Default::default();
        for i in 0..self.rank() {
            for j in 0..other.rank() {
                degrees.push(self.degrees[i] + other.degrees[j]);
                for p in 0..3 {
                    weights[p].push(&self.weights[p][i] + &other.weights[p][j]);
                }
            }
        }
        for p in order {
            for (d, w) in degrees.iter_mut().zip(weights[p.index()].iter_mut()) {
                while *w >= Rational::one() {
                    *w -= Rational::one();
                    *d += 1;
                }
            }
        }
        Self { degrees, weights }
    }

    /// Data compared by [`decompose`]: rank, total degree and the sorted weight
    /// multiset at each point.
    pub fn signature(&self) -> (usize, i64, [Vec<Rational>; 3]) {
        let mut w = self.weights.clone();
        for x in w.iter_mut() {
            x.sort();
        }
        (self.rank(), self.degree(), w)
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.signature() == other.signature()
    }
}

/// Named bundles assumed irreducible and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleLibrary {
    members: Vec<(String, ParabolicBundle)>,
}

/// `[(name, multiplicity)]` in library order, zero multiplicities omitted.
pub type Decomposition = Vec<(String, usize)>;

impl IrreducibleLibrary {
    pub fn new(members: Vec<(String, ParabolicBundle)>) -> Result<Self> {
        for (i, (name, b)) in members.iter().enumerate() {
            if !b.par_degree().is_zero() {
                return Err(Error::InvalidBundle(alloc::format!("{name} has nonzero parabolic degree")));
            }
            if members[..i].iter().any(|(n, o)| n == name || o.equivalent(b)) {
                return Err(Error::InvalidBundle(alloc::format!("{name} repeats an earlier member")));
            }
        }
        Ok(Self { members })
    }

    /// `Sigma11 = (O; 0; 0; 0)`, `Sigma12 = (O(-1); 0; 1/2; 1/2)`,
    /// `Sigma21 = (O(-1) + O(-1); 2/3, 1/3; 1/2, 0; 1/2, 0)`.
    pub fn s3() -> Self {
        let z = || Rational::zero();
        let members = vec![
            ("Sigma11".into(), ParabolicBundle::line(0, [z(), z(), z()]).unwrap()),
            ("Sigma12".into(), ParabolicBundle::line(-1, [z(), q(1, 2), q(1, 2)]).unwrap()),
            (
                "Sigma21".into(),
                ParabolicBundle::new(vec![-1, -1], [vec![q(2, 3), q(1, 3)], vec![q(1, 2), z()], vec![q(1, 2), z()]])
                    .unwrap(),
            ),
        ];
        Self::new(members).unwrap()
    }

    pub fn members(&self) -> &[(String, ParabolicBundle)] {
        &self.members
    }

    pub fn get(&self, name: &str) -> Option<&ParabolicBundle> {
        self.members.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Exhaustive search over multisets of library members with the rank of `b`
/// whose direct sum has the same total degree and weight multisets.
pub fn decompose(b: &ParabolicBundle, lib: &IrreducibleLibrary) -> Result<Decomposition> {
    let target = b.signature();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut counts = vec![0usize; lib.len()];
    search(lib, 0, b.rank(), &mut counts, &target, &mut found);
    match found.len() {
        0 => Err(Error::NoDecomposition),
        1 => Ok(lib
            .members
            .iter()
            .zip(&found[0])
            .filter(|(_, &n)| n > 0)
            .map(|((name, _), &n)| (name.clone(), n))
            .collect()),
        n => Err(Error::AmbiguousDecomposition(n)),
    }
}

fn search(
    lib: &IrreducibleLibrary,
    k: usize,
    remaining: usize,
    counts: &mut Vec<usize>,
    target: &(usize, i64, [Vec<Rational>; 3]),
    found: &mut Vec<Vec<usize>>,
) {
    if k == lib.len() {
        if remaining == 0 {
            let sum = lib
                .members
                .iter()
                .zip(counts.iter())
                .flat_map(|((_, b), &n)| core::iter::repeat_n(b, n))
                .fold(None::<ParabolicBundle>, |acc, b| Some(acc.map_or_else(|| b.clone(), |a| a.direct_sum(b))));
            if sum.is_some_and(|s| s.signature() == *target) {
                found.push(counts.clone());
            }
        }
        return;
    }
    let r = lib.members[k].1.rank();
    for n in 0..=remaining / r {
        counts[k] = n;
        search(lib, k + 1, remaining - n * r, counts, target, found);
    }
    counts[k] = 0;
}

/// `table[i][j]` is the decomposition of `member_i (x) member_j`.
pub fn fusion_table(lib: &IrreducibleLibrary) -> Result<Vec<Vec<Decomposition>>> {
    lib.members.iter().map(|(_, a)| lib.members.iter().map(|(_, b)| decompose(&a.tensor(b), lib)).collect()).collect()
}

/// Irreducible characters of `S3` on the classes (identity, transpositions,
/// 3-cycles), with class sizes `(1, 3, 2)`.
pub const S3_CHARACTERS: [(&str, [i64; 3]); 3] = [("triv", [1, 1, 1]), ("sgn", [1, -1, 1]), ("std", [2, 0, -1])];

/// `S3` library member corresponding to each representation.
pub const S3_CORRESPONDENCE: [(&str, &str); 3] = [("Sigma11", "triv"), ("Sigma12", "sgn"), ("Sigma21", "std")];

/// Tensor decompositions of the irreducible representations of `S3`, from
/// inner products of characters.
pub fn s3_representation_fusion() -> Vec<Vec<Vec<(&'static str, usize)>>> {
    let sizes = [1i64, 3, 2];
    S3_CHARACTERS
        .iter()
        .map(|(_, a)| {
            S3_CHARACTERS
                .iter()
                .map(|(_, b)| {
                    S3_CHARACTERS
                        .iter()
                        .filter_map(|(name, c)| {
                            let m: i64 = (0..3).map(|k| sizes[k] * a[k] * b[k] * c[k]).sum::<i64>() / 6;
                            (m > 0).then_some((*name, m as usize))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Compares the fusion table of the `S3` library with the representation
/// ring, entry by entry, through [`S3_CORRESPONDENCE`].
pub fn matches_s3(table: &[Vec<Decomposition>], lib: &IrreducibleLibrary) -> bool {
    let to_rep = |name: &str| S3_CORRESPONDENCE.iter().find(|(b, _)| *b == name).map(|(_, r)| *r);
    let reference = s3_representation_fusion();
    let order: Option<Vec<usize>> = lib
        .members
        .iter()
        .map(|(n, _)| to_rep(n).and_then(|r| S3_CHARACTERS.iter().position(|(c, _)| *c == r)))
        .collect();
    let Some(order) = order else { return false };
    if order.len() != 3 || table.len() != 3 {
        return false;
    }
    (0..3).all(|i| {
        (0..3).all(|j| {
            let mut got: Vec<(&str, usize)> =
                table[i][j].iter().filter_map(|(n, m)| to_rep(n).map(|r| (r, *m))).collect();
            let mut want = reference[order[i]][order[j]].clone();
            got.sort();
            want.sort();
            got.len() == table[i][j].len() && got == want
        })
    })
}
