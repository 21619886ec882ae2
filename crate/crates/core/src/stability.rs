//! Slopes, semistability, canonical polygons and filtrations of lattices.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Pow, Zero};

use crate::lattice::{canonical_sign, is_primitive_vector, minkowski_point, Lattice};
use crate::linalg::{self, IntMatrix};
use crate::{Error, NumericsConfig, Rational, Result};

/// Piecewise-linear function on `[0, rank]` with integer breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    rank: usize,
    values: Vec<f64>,
}

impl Polygon {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidPolygon("need at least two values".into()));
        }
        let rank = values.len() - 1;
        if values[0] != 0.0 || values[rank] != 0.0 {
            return Err(Error::InvalidPolygon("endpoint values must be 0".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPolygon("values must be finite".into()));
        }
        Ok(Self { rank, values })
    }

    pub fn zero(rank: usize) -> Self {
        Self { rank, values: vec![0.0; rank + 1] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Linear interpolation between integer points.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.rank as f64);
        let k = (libm::floor(t) as usize).min(self.rank.saturating_sub(1));
        let f = t - k as f64;
        self.values[k] * (1.0 - f) + self.values[k + 1] * f
    }

    /// Pointwise `self <= other` at integer arguments.
    pub fn le(&self, other: &Self) -> bool {
        self.rank == other.rank && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Upper convexity: second differences are nonpositive.
    pub fn is_convex(&self, tol: f64) -> bool {
        self.values.windows(3).all(|w| w[0] + w[2] - 2.0 * w[1] <= tol)
    }
}

/// An increasing chain of primitive sublattices, each given by coordinate rows
/// in the ambient basis. The last step spans the whole lattice; `0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub steps: Vec<Vec<Vec<i64>>>,
}

impl Flag {
    pub fn trivial(rank: usize) -> Self {
        Self { steps: vec![identity_rows(rank)] }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| linalg::rank(&linalg::to_int_matrix(s))).collect()
    }
}

fn identity_rows(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn to_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    linalg::to_i64_matrix(m).ok_or_else(|| Error::InvalidLattice("sublattice coordinates overflow i64".into()))
}

pub fn slope(lattice: &Lattice) -> f64 {
    lattice.degree() / lattice.rank() as f64
}

/// `det Gram` of the sublattice spanned by the rows (which must be independent).
fn sub_gram_det(lattice: &Lattice, rows: &[Vec<i64>]) -> Rational {
    linalg::det(&linalg::restrict_gram(lattice.gram(), rows))
}

/// Degree of the sublattice spanned by independent coordinate rows.
pub fn sublattice_degree(lattice: &Lattice, rows: &[Vec<i64>]) -> Result<f64> {
    let d = sub_gram_det(lattice, rows);
    if d.is_zero() {
        return Err(Error::SingularBasis);
    }
    Ok(-0.5 * linalg::ln_rational(&d))
}

/// Densest primitive sublattice of a given rank: its Gram determinant and HNF rows.
#[derive(Debug, Clone)]
struct Densest {
    det: Rational,
    rows: Vec<Vec<i64>>,
}

fn pick(cands: impl IntoIterator<Item = Densest>) -> Option<Densest> {
    cands.into_iter().fold(None, |best: Option<Densest>, c| match best {
        None => Some(c),
        Some(b) => {
            if c.det < b.det || (c.det == b.det && c.rows < b.rows) {
                Some(c)
            } else {
                Some(b)
            }
        }
    })
}

fn densest_line(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Densest> {
    let (min, vs) = lattice.minimal_vectors(cfg)?;
    Ok(pick(vs.into_iter().map(|v| Densest { det: min.clone(), rows: vec![v] })).expect("nonempty"))
}

fn densest_hyperplane(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Densest> {
    let r = lattice.rank();
    let (min, ws) = lattice.dual().minimal_vectors(cfg)?;
    let det = lattice.gram_det() * min;
    let mut cands = Vec::with_capacity(ws.len());
    for w in ws {
        let kernel = linalg::integer_kernel(&linalg::to_int_matrix(&[w]), r);
        cands.push(Densest { det: det.clone(), rows: to_rows(&kernel)? });
    }
    Ok(pick(cands).expect("nonempty"))
}

fn bilinear(lattice: &Lattice, a: &[i64], b: &[i64]) -> Rational {
    let g = lattice.gram();
    let mut acc = Rational::zero();
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            if ai != 0 && bj != 0 {
                acc += &g[i][j] * linalg::rat(ai * bj);
            }
        }
    }
    acc
}

/// Densest rank-2 sublattice of a rank-4 lattice. A Gauss-reduced basis
/// `(v1, v2)` of it satisfies `|v1|^2 |v2|^2 <= 4/3 det`, so both vectors have
/// `|v|^2 <= 4/3 * D / lambda_1^2` for any achievable determinant `D`.
fn densest_plane(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Densest> {
    let r = lattice.rank();
    let (lambda, _) = lattice.minimal_vectors(cfg)?;
    let lambda = linalg::to_f64(&lambda);
    let mut bound = 2.0 * lambda;
    loop {
        let vs = lattice.short_vectors(bound, cfg)?;
        let norms: Vec<f64> = vs.iter().map(|v| linalg::to_f64(&v.norm)).collect();
        let g = lattice.gram_f64();
        let dot = |a: &[i64], b: &[i64]| -> f64 {
            let mut s = 0.0;
            for i in 0..r {
                for j in 0..r {
                    s += a[i] as f64 * g[i][j] * b[j] as f64;
                }
            }
            s
        };
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let d = norms[i] * norms[j] - dot(&vs[i].coords, &vs[j].coords).powi(2);
                if d > 1e-9 * norms[i] * norms[j] {
                    pairs.push((d, i, j));
                }
            }
        }
        if pairs.is_empty() {
            bound *= 2.0;
            continue;
        }
        let dmin = pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let needed = 4.0 / 3.0 * dmin / lambda * (1.0 + 1e-9);
        if needed > bound {
            bound = needed;
            continue;
        }
        let mut cands = Vec::new();
        for &(d, i, j) in &pairs {
            if d > dmin * (1.0 + 1e-6) {
                continue;
            }
            let (a, b) = (&vs[i].coords, &vs[j].coords);
            let span = linalg::saturate(&linalg::to_int_matrix(&[a.clone(), b.clone()]), r);
            let rows = to_rows(&span)?;
            let det = &vs[i].norm * &vs[j].norm - bilinear(lattice, a, b).pow(2u32);
            // a non-saturated pair has a strictly denser saturation
            let det = if linalg::maximal_minor_gcd(&linalg::to_int_matrix(&[a.clone(), b.clone()])).is_one() {
                det
            } else {
                sub_gram_det(lattice, &rows)
            };
            cands.push(Densest { det, rows });
        }
        return Ok(pick(cands).expect("nonempty"));
    }
}

/// Densest primitive sublattice of each rank `1..r-1`.
fn densest_sublattices(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Vec<Densest>> {
    let r = lattice.rank();
    let mut out = Vec::new();
    for k in 1..r {
        let d = if k == 1 {
            densest_line(lattice, cfg)?
        } else if k == r - 1 {
            densest_hyperplane(lattice, cfg)?
        } else {
            densest_plane(lattice, cfg)?
        };
        out.push(d);
    }
    Ok(out)
}

/// `D_k^r >= D_r^k` for every proper densest sublattice.
pub fn is_semistable(lattice: &Lattice, cfg: &NumericsConfig) -> Result<bool> {
    let r = lattice.rank() as u32;
    let full = lattice.gram_det();
    Ok(densest_sublattices(lattice, cfg)?
        .iter()
        .enumerate()
        .all(|(i, d)| d.det.clone().pow(r) >= full.clone().pow(i as u32 + 1)))
}

/// Strict vertices `0 = k_0 < ... < k_m = r` of the upper envelope of
/// `(k, -log(D_k)/2)`, decided exactly on the determinants.
fn envelope(dets: &[Rational]) -> Vec<usize> {
    // k lies on or below the chord from i to j iff D_k^(j-i) >= D_i^(j-k) D_j^(k-i)
    let below = |i: usize, k: usize, j: usize| {
        dets[k].clone().pow((j - i) as u32) >= dets[i].clone().pow((j - k) as u32) * dets[j].clone().pow((k - i) as u32)
    };
    let mut hull: Vec<usize> = Vec::new();
    for j in 0..dets.len() {
        while hull.len() >= 2 && below(hull[hull.len() - 2], hull[hull.len() - 1], j) {
            hull.pop();
        }
        hull.push(j);
    }
    hull
}

struct Canonical {
    polygon: Polygon,
    flag: Flag,
}

fn canonical(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Canonical> {
    let r = lattice.rank();
    let densest = densest_sublattices(lattice, cfg)?;
    let mut dets = vec![Rational::one()];
    dets.extend(densest.iter().map(|d| d.det.clone()));
    dets.push(lattice.gram_det());
    let hull = envelope(&dets);
    let deg = lattice.degree();
    let norm_deg = |k: usize| -0.5 * linalg::ln_rational(&dets[k]) - k as f64 / r as f64 * deg;
    let mut values = vec![0.0; r + 1];
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let (pi, pj) = (if i == 0 { 0.0 } else { norm_deg(i) }, if j == r { 0.0 } else { norm_deg(j) });
        for (k, v) in values.iter_mut().enumerate().take(j + 1).skip(i) {
            *v = pi + (pj - pi) * (k - i) as f64 / (j - i) as f64;
        }
    }
    values[0] = 0.0;
    values[r] = 0.0;
    let mut steps: Vec<Vec<Vec<i64>>> = hull[1..hull.len() - 1].iter().map(|&k| densest[k - 1].rows.clone()).collect();
    steps.push(identity_rows(r));
    Ok(Canonical { polygon: Polygon { rank: r, values }, flag: Flag { steps } })
}

/// The canonical (Harder-Narasimhan) polygon, normalized so that `p(0) = p(r) = 0`.
pub fn canonical_polygon(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Polygon> {
    Ok(canonical(lattice, cfg)?.polygon)
}

/// The canonical filtration; its steps are the vertices of the canonical polygon.
pub fn canonical_filtration(lattice: &Lattice, cfg: &NumericsConfig) -> Result<Flag> {
    Ok(canonical(lattice, cfg)?.flag)
}

/// Slopes of the successive quotients of a flag.
pub fn quotient_slopes(lattice: &Lattice, flag: &Flag) -> Result<Vec<f64>> {
    let steps = validate_flag(lattice, flag)?;
    let mut out = Vec::new();
    let (mut prev_rank, mut prev_deg) = (0usize, 0.0);
    for (k, d) in steps {
        out.push((d - prev_deg) / (k - prev_rank) as f64);
        prev_rank = k;
        prev_deg = d;
    }
    Ok(out)
}

/// Checks the flag and returns `(rank, degree)` of each step.
fn validate_flag(lattice: &Lattice, flag: &Flag) -> Result<Vec<(usize, f64)>> {
    let r = lattice.rank();
    if flag.steps.is_empty() {
        return Err(Error::InvalidFlag("flag has no steps".into()));
    }
    let mut out = Vec::new();
    let mut prev: Option<IntMatrix> = None;
    for (idx, step) in flag.steps.iter().enumerate() {
        if step.is_empty() || step.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidFlag(alloc::format!("step {idx}: rows must have length {r}")));
        }
        let hnf = linalg::hermite_normal_form(&linalg::to_int_matrix(step));
        if hnf.is_empty() {
            return Err(Error::InvalidFlag(alloc::format!("step {idx} is zero")));
        }
        if !linalg::maximal_minor_gcd(&hnf).is_one() {
            return Err(Error::InvalidFlag(alloc::format!("step {idx} is not primitive")));
        }
        let k = hnf.len();
        if let Some(p) = &prev {
            let mut both = p.clone();
            both.extend(hnf.iter().cloned());
            if k <= p.len() || linalg::rank(&both) != k {
                return Err(Error::InvalidFlag(alloc::format!(
                    "step {idx} does not strictly contain step {}",
                    idx - 1
                )));
            }
        }
        out.push((k, sublattice_degree(lattice, &to_rows(&hnf)?)?));
        prev = Some(hnf);
    }
    if out.last().map(|s| s.0) != Some(r) {
        return Err(Error::InvalidFlag("last step must be the full lattice".into()));
    }
    Ok(out)
}

/// Polygon through the normalized degrees of the flag steps.
pub fn flag_polygon(lattice: &Lattice, flag: &Flag) -> Result<Polygon> {
    let r = lattice.rank();
    let deg = lattice.degree();
    let steps = validate_flag(lattice, flag)?;
    let mut values = vec![0.0; r + 1];
    let (mut i, mut pi) = (0usize, 0.0);
    for (j, d) in steps {
        let pj = if j == r { 0.0 } else { d - j as f64 / r as f64 * deg };
        for (k, v) in values.iter_mut().enumerate().take(j + 1).skip(i) {
            *v = pi + (pj - pi) * (k - i) as f64 / (j - i) as f64;
        }
        i = j;
        pi = pj;
    }
    Ok(Polygon { rank: r, values })
}

/// `1` iff the canonical polygon lies below `p` at integer points.
pub fn truncation_indicator(lattice: &Lattice, p: &Polygon, cfg: &NumericsConfig) -> Result<u8> {
    if p.rank != lattice.rank() {
        return Err(Error::InvalidPolygon("polygon rank differs from lattice rank".into()));
    }
    Ok(u8::from(canonical_polygon(lattice, cfg)?.le(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParabolicSum {
    pub value: i64,
    pub destabilizing_lines: usize,
}

/// `1 - #{primitive lines l : deg l - deg L / 2 > p(1)}` for rank 2.
pub fn parabolic_sum_indicator_rank2(lattice: &Lattice, p: &Polygon, cfg: &NumericsConfig) -> Result<ParabolicSum> {
    if lattice.rank() != 2 || p.rank != 2 {
        return Err(Error::Domain("rank-2 lattice and polygon required".into()));
    }
    if p.values[1] < 0.0 {
        return Err(Error::InvalidPolygon("p(1) must be nonnegative".into()));
    }
    // |v|^2 < sqrt(det G) exp(-2 p(1))
    let bound = libm::exp(0.5 * linalg::ln_rational(&lattice.gram_det()) - 2.0 * p.values[1]);
    let count = lattice
        .short_vectors(bound, cfg)?
        .iter()
        .filter(|v| canonical_sign(&v.coords) && is_primitive_vector(&v.coords) && linalg::to_f64(&v.norm) < bound)
        .count();
    Ok(ParabolicSum { value: 1 - count as i64, destabilizing_lines: count })
}

/// Polygon side `p(1) > log(T)/2` and height side `y > T` of the rank-2
/// correspondence, for `T >= 1`.
pub fn arthur_correspondence_rank2(lattice: &Lattice, t: f64, cfg: &NumericsConfig) -> Result<(bool, bool)> {
    if lattice.rank() != 2 {
        return Err(Error::Domain("rank-2 lattice required".into()));
    }
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::Domain("T must be at least 1".into()));
    }
    let threshold = 0.5 * libm::log(t);
    let polygon = canonical_polygon(lattice, cfg)?;
    let z = minkowski_point(lattice)?.z;
    Ok((polygon.values[1] > threshold, z.y > libm::exp(2.0 * threshold)))
}
