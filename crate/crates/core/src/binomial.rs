//! Exact binomial coefficients on big integers.
//!
//! `binom(a, b)` is zero whenever `b < 0` or `b > a`, including for negative `a`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Product of the integers in `lo..=hi` by balanced splitting.
pub fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::from(lo);
        for v in lo + 1..=hi {
            acc *= v;
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

pub fn factorial(n: u64) -> BigUint {
    range_product(1, n)
}

/// `binom(a, b)` for nonnegative arguments.
pub fn binom_u64(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    if b == 0 {
        return BigUint::one();
    }
    if b < 64 {
        let mut acc = BigUint::one();
        for i in 1..=b {
            acc = acc * (a - b + i) / i;
        }
        return acc;
    }
    range_product(a - b + 1, a) / factorial(b)
}

/// `binom(a, b)` with the zero convention outside `0 <= b <= a`.
pub fn binom(a: i128, b: i128) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    binom_u64(a as u64, b as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rule() {
        for a in 1..60i128 {
            for b in 0..=a {
                assert_eq!(binom(a, b), binom(a - 1, b) + binom(a - 1, b - 1), "({a},{b})");
            }
        }
    }

    #[test]
    fn conventions() {
        assert_eq!(binom(5, -1), BigUint::zero());
        assert_eq!(binom(5, 6), BigUint::zero());
        assert_eq!(binom(-3, 2), BigUint::zero());
        assert_eq!(binom(0, 0), BigUint::one());
        assert_eq!(binom_u64(10, 3), BigUint::from(120u32));
    }

    #[test]
    fn large_branch_matches_small_branch() {
        let a = 300u64;
        for b in [64u64, 100, 150, 236] {
            let mut acc = BigUint::one();
            for i in 1..=b {
                acc = acc * (a - b + i) / i;
            }
            assert_eq!(binom_u64(a, b), acc);
        }
        assert_eq!(factorial(20), BigUint::from(2432902008176640000u64));
    }
}
