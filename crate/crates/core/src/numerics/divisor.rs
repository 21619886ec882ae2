use alloc::vec::Vec;

use super::pow_real;
use crate::Complex;

/// `sigma_s(n) = sum_{d | n} d^s`, divisors summed in ascending order.
pub fn sigma_divisor(s: Complex, n: u64) -> Complex {
    assert!(n >= 1, "sigma_divisor needs n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small
        .into_iter()
        .chain(large.into_iter().rev())
        .map(|d| pow_real(d as f64, s))
        .fold(Complex::new(0.0, 0.0), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn re(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn small_values() {
        assert!((sigma_divisor(re(0.0), 6) - 4.0).norm() < 1e-15);
        assert!((sigma_divisor(re(1.0), 6) - 12.0).norm() < 1e-13);
        assert!((sigma_divisor(re(-1.0), 4) - 1.75).norm() < 1e-15);
        assert!((sigma_divisor(re(2.0), 1) - 1.0).norm() < 1e-15);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs(m in 1u64..400, n in 1u64..400, sr in -2.0f64..2.0, si in -2.0f64..2.0) {
            prop_assume!(gcd(m, n) == 1);
            let s = Complex::new(sr, si);
            let lhs = sigma_divisor(s, m * n);
            let rhs = sigma_divisor(s, m) * sigma_divisor(s, n);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
        }
    }
}
