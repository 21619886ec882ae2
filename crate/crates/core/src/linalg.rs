//! Small exact matrices: rationals for Gram data, big integers for coordinate lattices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..inner {
                        acc += &row[k] * &b[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `B B^T` for a basis given by rows.
pub fn gram_of_rows(basis: &RatMatrix) -> RatMatrix {
    mul(basis, &transpose(basis))
}

/// Determinant by Gaussian elimination over `Q`.
pub fn det(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan; `None` if singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `x^T G x` for an integer coordinate vector.
pub fn quad_form(g: &RatMatrix, x: &[i64]) -> Rational {
    let mut acc = Rational::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            acc += &g[i][j] * rat(xi * xj);
        }
    }
    acc
}

/// Gram matrix `M G M^T` of the vectors whose coordinates are the rows of `m`.
pub fn restrict_gram(g: &RatMatrix, m: &[Vec<i64>]) -> RatMatrix {
    let k = m.len();
    let mut out = vec![vec![Rational::zero(); k]; k];
    for a in 0..k {
        for b in a..k {
            let mut acc = Rational::zero();
            for (i, &x) in m[a].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in m[b].iter().enumerate() {
                    if y != 0 {
                        acc += &g[i][j] * rat(x * y);
                    }
                }
            }
            out[a][b] = acc.clone();
            out[b][a] = acc;
        }
    }
    out
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn matrix_to_f64(m: &RatMatrix) -> Vec<Vec<f64>> {
    m.iter().map(|row| row.iter().map(to_f64).collect()).collect()
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        libm::log(n.to_f64().unwrap())
    } else {
        let shift = bits - 900;
        libm::log((n >> shift).to_f64().unwrap()) + shift as f64 * core::f64::consts::LN_2
    }
}

/// Natural logarithm of a positive rational without overflow.
pub fn ln_rational(q: &Rational) -> f64 {
    assert!(q.is_positive(), "logarithm of a nonpositive rational");
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

/// Positive-definiteness by exact leading principal minors.
pub fn is_positive_definite(g: &RatMatrix) -> bool {
    (1..=g.len()).all(|k| {
        let sub: RatMatrix = g[..k].iter().map(|row| row[..k].to_vec()).collect();
        det(&sub).is_positive()
    })
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_i64_matrix(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|row| row.iter().map(|x| x.to_i64()).collect()).collect()
}

fn row_sub_assign(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

/// Row echelon reduction over `Z` restricted to the first `cols` columns.
///
/// Returns the number of pivot rows; rows below that are zero in those columns.
fn integer_echelon(a: &mut IntMatrix, cols: usize) -> usize {
    let rows = a.len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best =
                (r..rows).filter(|&i| !a[i][col].is_zero()).min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot_row = a[r].clone();
                row_sub_assign(&mut a[i], &pivot_row, &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = a[i][col].div_floor(&a[r][col]);
                if !q.is_zero() {
                    let pivot_row = a[r].clone();
                    row_sub_assign(&mut a[i], &pivot_row, &q);
                }
            }
            r += 1;
        }
    }
    r
}

/// Row Hermite normal form of the row lattice (zero rows dropped).
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let cols = a.first().map_or(0, Vec::len);
    let r = integer_echelon(&mut a, cols);
    a.truncate(r);
    a
}

/// Basis of `{x in Z^n : A x = 0}` for `A` with `n` columns.
pub fn integer_kernel(a: &IntMatrix, n: usize) -> IntMatrix {
    let k = a.len();
    // rows: [A^T | I_n]
    let mut aug: IntMatrix = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..k).map(|j| a[j][i].clone()).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let r = integer_echelon(&mut aug, k);
    let kernel: IntMatrix = aug[r..].iter().map(|row| row[k..].to_vec()).collect();
    if kernel.is_empty() {
        kernel
    } else {
        hermite_normal_form(&kernel)
    }
}

/// Primitive closure `span_Q(rows) ∩ Z^n`, in Hermite normal form.
pub fn saturate(rows: &IntMatrix, n: usize) -> IntMatrix {
    let perp = integer_kernel(rows, n);
    if perp.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    }
    integer_kernel(&perp, n)
}

pub fn rank(rows: &IntMatrix) -> usize {
    hermite_normal_form(rows).len()
}

/// gcd of the maximal minors; zero if the rows are dependent.
pub fn maximal_minor_gcd(rows: &IntMatrix) -> BigInt {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    let mut cols = Vec::with_capacity(k);
    subsets(n, k, 0, &mut cols, &mut |cs| {
        let sub: RatMatrix =
            rows.iter().map(|row| cs.iter().map(|&c| Rational::from_integer(row[c].clone())).collect()).collect();
        let d = det(&sub);
        g = g.gcd(d.numer());
    });
    g
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        subsets(n, k, c + 1, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        to_int_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_and_inverse() {
        let m: RatMatrix = vec![
            vec![rat(2), rat(1), rat(0)],
            vec![Rational::new(1.into(), 3.into()), rat(4), rat(-1)],
            vec![rat(0), rat(5), rat(7)],
        ];
        // cofactor expansion
        let expect = rat(2) * (rat(28) + rat(5)) - rat(1) * (Rational::new(7.into(), 3.into()));
        assert_eq!(det(&m), expect);
        let inv = inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity(3));
        assert!(inverse(&vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let b = im(&[&[2, 4, 4], &[-4, 10, 16], &[10, -4, -16]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        let h = hermite_normal_form(&a);
        assert!(h.iter().enumerate().all(|(i, row)| row[..i].iter().all(Zero::is_zero)));
    }

    #[test]
    fn kernel_and_saturation() {
        let w = im(&[&[2, 3, 5]]);
        let k = integer_kernel(&w, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip(&w[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(maximal_minor_gcd(&k), BigInt::one());
        let sat = saturate(&im(&[&[2, 0, 0], &[0, 3, 3]]), 3);
        assert_eq!(sat, im(&[&[1, 0, 0], &[0, 1, 1]]));
        assert_eq!(maximal_minor_gcd(&im(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(maximal_minor_gcd(&im(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn logs_of_large_rationals() {
        let q = Rational::new(BigInt::from(10).pow(400), BigInt::from(3));
        assert!((ln_rational(&q) - (400.0 * 10f64.ln() - 3f64.ln())).abs() < 1e-9);
    }
}
