//! Exact scalars, binomial coefficients and univariate polynomial algebra.

mod polynomial;
mod rational;

pub use polynomial::{lowest_nonconstant_degree, poly_integrate_definite, poly_mul, Polynomial};
pub use rational::{Rational, Relation};

use num::bigint::BigInt;
use num::{One, Zero};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) * (n - i) / (i + 1) = C(n, i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` as a rational; `n` may be negative only through the
/// out-of-range convention (returns zero).
pub fn binomial_q(n: i64, k: i64) -> Rational {
    if n < 0 {
        return Rational::zero();
    }
    Rational::from_bigint(binomial(n as u64, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn pascal_rule_up_to_30() {
        for n in 2..=30u64 {
            for k in 1..n as i64 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_large() {
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }
}
