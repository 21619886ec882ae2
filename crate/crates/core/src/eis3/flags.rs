//! Complete flags of `Z^3` and the coset sum over `P0(Z) \ SL3(Z)`.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_integer::Integer;

use super::{inverse_transpose, mat_mul, transpose, Matrix3, SL3Point};
use crate::numerics::xi_completed;
use crate::{Complex, Error, NumericsConfig, Result};

/// Value of a truncated coset sum with `estimate = |S(H) - S(H/2)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex,
    pub estimate: f64,
    pub flags: usize,
}

impl SeriesResult {
    pub fn scaled(self, factor: Complex) -> Self {
        Self { value: self.value * factor, estimate: self.estimate * factor.norm(), ..self }
    }
}

pub(crate) fn check_region(s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<()> {
    let m = cfg.series_cutoff_margin;
    if 3.0 * s.re - t.re <= 2.0 + m || t.re <= 1.0 + m {
        return Err(Error::ConvergenceRegion(alloc::format!(
            "coset sum needs 3Re(s) - Re(t) > {} and Re(t) > {}",
            2.0 + m,
            1.0 + m
        )));
    }
    Ok(())
}

fn canonical(v: &[i64; 3]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn dot(a: &[i64; 3], b: &[i64; 3]) -> i128 {
    (0..3).map(|i| a[i] as i128 * b[i] as i128).sum()
}

fn sup(v: &[i64; 3]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Lagrange-reduced basis of `v^perp` in `Z^3` for primitive `v`.
fn orthogonal_basis(v: &[i64; 3]) -> ([i64; 3], [i64; 3]) {
    let [p, q, r] = *v;
    let (mut b1, mut b2) = if p == 0 && q == 0 {
        ([1, 0, 0], [0, 1, 0])
    } else {
        let e = p.extended_gcd(&q);
        let g = e.gcd;
        ([q / g, -p / g, 0], [e.x * r, e.y * r, -g])
    };
    loop {
        if dot(&b1, &b1) > dot(&b2, &b2) {
            core::mem::swap(&mut b1, &mut b2);
        }
        let n = dot(&b1, &b1);
        let m = dot(&b1, &b2);
        // nearest integer to m / n
        let mu = (2 * m + n).div_euclid(2 * n);
        if mu == 0 {
            break;
        }
        let mu = mu as i64;
        for i in 0..3 {
            b2[i] -= mu * b1[i];
        }
    }
    (b1, b2)
}

/// Calls `f(v, w, height)` for every flag `(line Zv, plane w^perp)` with
/// `v` and `w` primitive, `w . v = 0`, both up to sign, and
/// `max(|v|_inf, |w|_inf) <= height`. Returns the number of flags.
pub fn for_each_flag<F>(height: u32, budget: usize, mut f: F) -> Result<usize>
where
    F: FnMut(&[i64; 3], &[i64; 3], i64),
{
    let h = height as i64;
    let root3 = 3f64.sqrt();
    let mut count = 0usize;
    for p in 0..=h {
        for q in -h..=h {
            for r in -h..=h {
                let v = [p, q, r];
                if !canonical(&v) || p.gcd(&q).gcd(&r) != 1 {
                    continue;
                }
                let (b1, b2) = orthogonal_basis(&v);
                let nv = (dot(&v, &v) as f64).sqrt();
                let amax = (root3 * h as f64 * (dot(&b2, &b2) as f64).sqrt() / nv).floor() as i64 + 1;
                let cmax = (root3 * h as f64 * (dot(&b1, &b1) as f64).sqrt() / nv).floor() as i64 + 1;
                let hv = sup(&v);
                for a in 0..=amax {
                    for c in -cmax..=cmax {
                        if (a == 0 && c != 1) || a.gcd(&c) != 1 {
                            continue;
                        }
                        let w = [a * b1[0] + c * b2[0], a * b1[1] + c * b2[1], a * b1[2] + c * b2[2]];
                        let hw = sup(&w);
                        if hw > h {
                            continue;
                        }
                        count += 1;
                        if count > budget {
                            return Err(Error::EnumerationOverflow { budget });
                        }
                        f(&v, &w, hv.max(hw));
                    }
                }
            }
        }
    }
    Ok(count)
}

fn to_f64(v: &[i64; 3]) -> [f64; 3] {
    [v[0] as f64, v[1] as f64, v[2] as f64]
}

/// Quadratic forms `Q_v = |v g|^2` and `Q_w = |w g^{-T}|^2` for `g` in `SL3(R)`.
struct Forms {
    gv: Matrix3,
    gw: Matrix3,
}

impl Forms {
    fn new(g: &Matrix3) -> Self {
        let gi = inverse_transpose(g);
        Self { gv: mat_mul(g, &transpose(g)), gw: mat_mul(&gi, &transpose(&gi)) }
    }

    #[inline]
    fn eval(m: &Matrix3, v: [f64; 3]) -> f64 {
        m[0][0] * v[0] * v[0]
            + m[1][1] * v[1] * v[1]
            + m[2][2] * v[2] * v[2]
            + 2.0 * (m[0][1] * v[0] * v[1] + m[0][2] * v[0] * v[2] + m[1][2] * v[1] * v[2])
    }
}

/// Term `y_1(gamma Y)^s u_1(gamma Y)^t = Q_v^{(t - 3s)/2} Q_w^{-t}`.
#[derive(Clone, Copy)]
enum Exponents {
    HalfInteger(i32, i32),
    Real(f64, f64),
    Complex(Complex, Complex),
}

impl Exponents {
    fn new(s: Complex, t: Complex) -> Self {
        let a = (t - 3.0 * s) * 0.5;
        let b = -t;
        let half = |x: f64| {
            let k = 2.0 * x;
            (k == k.round() && k.abs() < 64.0).then_some(k as i32)
        };
        if a.im == 0.0 && b.im == 0.0 {
            match (half(a.re), half(b.re)) {
                (Some(ka), Some(kb)) => Exponents::HalfInteger(ka, kb),
                _ => Exponents::Real(a.re, b.re),
            }
        } else {
            Exponents::Complex(a, b)
        }
    }

    #[inline]
    fn term(self, qv: f64, qw: f64) -> Complex {
        if let Exponents::HalfInteger(ka, kb) = self {
            return Complex::new(pow_half(qv, ka, qw, kb), 0.0);
        }
        let (lv, lw) = (qv.ln(), qw.ln());
        match self {
            Exponents::HalfInteger(..) => unreachable!(),
            Exponents::Real(a, b) => Complex::new((a * lv + b * lw).exp(), 0.0),
            Exponents::Complex(a, b) => (a * lv + b * lw).exp(),
        }
    }
}

/// `qv^{ka/2} qw^{kb/2}` with one division and at most one square root.
#[inline]
fn pow_half(qv: f64, ka: i32, qw: f64, kb: i32) -> f64 {
    let (mut num, mut den) = (1.0, 1.0);
    for (q, k) in [(qv, ka), (qw, kb)] {
        let n = k.div_euclid(2);
        for _ in 0..n.unsigned_abs() {
            if n < 0 {
                den *= q;
            } else {
                num *= q;
            }
        }
    }
    let root = match (ka % 2 != 0, kb % 2 != 0) {
        (false, false) => 1.0,
        (true, false) => libm::sqrt(qv),
        (false, true) => libm::sqrt(qw),
        (true, true) => libm::sqrt(qv * qw),
    };
    num * root / den
}

/// Coset sum at `Y` truncated at `height`, streamed without storing flags.
pub fn sl3_eisenstein_direct(
    y: &SL3Point,
    s: Complex,
    t: Complex,
    height: u32,
    cfg: &NumericsConfig,
) -> Result<SeriesResult> {
    check_region(s, t, cfg)?;
    let forms = Forms::new(&y.to_matrix());
    let ex = Exponents::new(s, t);
    let half = (height / 2) as i64;
    let (mut full, mut low) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    let n = for_each_flag(height, cfg.flag_budget, |v, w, h| {
        let term = ex.term(Forms::eval(&forms.gv, to_f64(v)), Forms::eval(&forms.gw, to_f64(w)));
        full += term;
        if h <= half {
            low += term;
        }
    })?;
    Ok(SeriesResult { value: full, estimate: (full - low).norm(), flags: n })
}

/// `xi(2t) xi(3s - t) xi(3s + t - 1)`.
pub fn xi_product(s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<Complex> {
    Ok(xi_completed(2.0 * t, cfg)? * xi_completed(3.0 * s - t, cfg)? * xi_completed(3.0 * s + t - 1.0, cfg)?)
}

/// Completed series `xi(2t) xi(3s - t) xi(3s + t - 1) E(Y; s, t)`.
pub fn sl3_completed(y: &SL3Point, s: Complex, t: Complex, height: u32, cfg: &NumericsConfig) -> Result<SeriesResult> {
    let raw = sl3_eisenstein_direct(y, s, t, height, cfg)?;
    Ok(raw.scaled(xi_product(s, t, cfg)?))
}

/// Stored flags of height at most `height`, sorted by height.
#[derive(Debug, Clone)]
pub struct FlagTable {
    height: u32,
    flags: Vec<[i8; 6]>,
    half_end: usize,
}

impl FlagTable {
    pub fn build(height: u32, cfg: &NumericsConfig) -> Result<Self> {
        if height == 0 || height > i8::MAX as u32 {
            return Err(Error::Domain(alloc::format!("flag table height must lie in 1..=127, got {height}")));
        }
        let half = (height / 2) as i64;
        let (mut low, mut high) = (Vec::new(), Vec::new());
        for_each_flag(height, cfg.flag_budget, |v, w, h| {
            let packed = [v[0] as i8, v[1] as i8, v[2] as i8, w[0] as i8, w[1] as i8, w[2] as i8];
            if h <= half {
                low.push(packed);
            } else {
                high.push(packed);
            }
        })?;
        let half_end = low.len();
        low.extend_from_slice(&high);
        Ok(Self { height, flags: low, half_end })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// Coset sum at the point `g K`, for any `g` in `SL3(R)`.
    pub fn sum(&self, g: &Matrix3, s: Complex, t: Complex, cfg: &NumericsConfig) -> Result<SeriesResult> {
        check_region(s, t, cfg)?;
        let forms = Forms::new(g);
        let ex = Exponents::new(s, t);
        let partial = |flags: &[[i8; 6]]| {
            flags.iter().fold(Complex::new(0.0, 0.0), |acc, f| {
                let v = [f[0] as f64, f[1] as f64, f[2] as f64];
                let w = [f[3] as f64, f[4] as f64, f[5] as f64];
                acc + ex.term(Forms::eval(&forms.gv, v), Forms::eval(&forms.gw, w))
            })
        };
        let low = partial(&self.flags[..self.half_end]);
        let high = partial(&self.flags[self.half_end..]);
        Ok(SeriesResult { value: low + high, estimate: high.norm(), flags: self.flags.len() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_basis_spans_complement() {
        for v in [[1i64, 0, 0], [0, 0, 1], [2, 3, 5], [6, -10, 15], [0, 4, 7], [12, 18, 1]] {
            let (b1, b2) = orthogonal_basis(&v);
            assert_eq!(dot(&b1, &v), 0);
            assert_eq!(dot(&b2, &v), 0);
            let cross = [b1[1] * b2[2] - b1[2] * b2[1], b1[2] * b2[0] - b1[0] * b2[2], b1[0] * b2[1] - b1[1] * b2[0]];
            assert!(cross == v || cross == [-v[0], -v[1], -v[2]]);
        }
    }

    #[test]
    fn flag_count_matches_brute_force() {
        let h = 3i64;
        let mut brute = 0;
        let range = || (-h..=h).flat_map(move |a| (-h..=h).flat_map(move |b| (-h..=h).map(move |c| [a, b, c])));
        for v in range() {
            if !canonical(&v) || v[0].gcd(&v[1]).gcd(&v[2]) != 1 {
                continue;
            }
            for w in range() {
                if canonical(&w) && w[0].gcd(&w[1]).gcd(&w[2]) == 1 && dot(&v, &w) == 0 {
                    brute += 1;
                }
            }
        }
        let n = for_each_flag(h as u32, usize::MAX, |_, _, _| {}).unwrap();
        assert_eq!(n, brute);
    }

    #[test]
    fn half_integer_path_matches_logarithms() {
        let (qv, qw) = (2.7, 5.3);
        for (s, t) in [(3.0, 2.0), (2.5, 1.5), (1.5, 1.25)] {
            let (s, t) = (Complex::new(s, 0.0), Complex::new(t, 0.0));
            let fast = Exponents::new(s, t).term(qv, qw);
            let slow = Exponents::Complex((t - 3.0 * s) * 0.5, -t).term(qv, qw);
            assert!((fast - slow).norm() < 1e-14 * slow.norm());
        }
    }

    #[test]
    fn budget_overflow() {
        assert!(matches!(for_each_flag(5, 10, |_, _, _| {}), Err(Error::EnumerationOverflow { budget: 10 })));
    }
}
