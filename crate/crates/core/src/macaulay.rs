//! Macaulay representations and the minimal-growth bound on Hilbert functions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binomial::binom_u64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MacaulayError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("quotient dimension {q} exceeds dim S^{d} = {full} in {n} variables")]
    QuotientTooLarge { q: BigUint, d: u32, n: u64, full: BigUint },
    #[error("need q < d (got q = {q}, d = {d})")]
    QNotBelowDegree { q: u32, d: u32 },
    #[error("need q <= b (got q = {q}, b = {b})")]
    QAboveB { q: u64, b: u64 },
}

/// `Q = sum binom(a_i, i)` over `i = d, d-1, ..., delta` with `a_d > ... > a_delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRep {
    pub degree: u32,
    /// `(a_i, i)` pairs, `i` descending.
    pub terms: Vec<(BigUint, u32)>,
}

impl MacaulayRep {
    pub fn value(&self) -> BigUint {
        self.terms.iter().map(|(a, i)| binom_big(a, *i)).sum()
    }

    /// Smallest index retained, `None` for the empty representation of 0.
    pub fn delta(&self) -> Option<u32> {
        self.terms.last().map(|t| t.1)
    }

    pub fn is_valid(&self) -> bool {
        let consecutive = self.terms.iter().enumerate().all(|(j, (_, i))| *i + j as u32 == self.degree);
        let decreasing = self.terms.windows(2).all(|w| w[0].0 > w[1].0);
        let bounded = self.terms.iter().all(|(a, i)| *i >= 1 && *a >= BigUint::from(*i));
        consecutive && decreasing && bounded
    }
}

/// `binom(a, i)` for a big top argument and small bottom argument.
pub fn binom_big(a: &BigUint, i: u32) -> BigUint {
    if a < &BigUint::from(i) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for j in 0..i {
        acc = acc * (a - j) / (j + 1);
    }
    acc
}

/// Largest `a >= i` with `binom(a, i) <= q`, for `q >= 1`.
fn largest_top(q: &BigUint, i: u32) -> BigUint {
    let mut lo = BigUint::from(i);
    let mut hi = &lo + 1u32;
    while binom_big(&hi, i) <= *q {
        lo = hi.clone();
        hi = &hi * 2u32;
    }
    // binom(lo, i) <= q < binom(hi, i)
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if binom_big(&mid, i) <= *q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Greedy Macaulay representation of `q` at degree `d`. `q = 0` gives the empty representation.
pub fn macaulay_rep(q: &BigUint, d: u32) -> Result<MacaulayRep, MacaulayError> {
    if d == 0 {
        return Err(MacaulayError::ZeroDegree);
    }
    let mut rest = q.clone();
    let mut terms = Vec::new();
    for i in (1..=d).rev() {
        if rest.is_zero() {
            break;
        }
        let a = largest_top(&rest, i);
        rest -= binom_big(&a, i);
        terms.push((a, i));
    }
    debug_assert!(rest.is_zero());
    Ok(MacaulayRep { degree: d, terms })
}

/// Lower bound on `dim I_{d+tau}` for an ideal with `dim S^d V / I_d = q`, `dim V = n_vars`.
pub fn macaulay_min_growth(q: &BigUint, d: u32, tau: u32, n_vars: u64) -> Result<BigUint, MacaulayError> {
    let full = binom_u64(n_vars + d as u64 - 1, d as u64);
    if q > &full {
        return Err(MacaulayError::QuotientTooLarge { q: q.clone(), d, n: n_vars, full });
    }
    let total = binom_u64(n_vars + d as u64 + tau as u64 - 1, (d + tau) as u64);
    if d == 0 {
        // I_0 is either 0 or the whole ring
        return Ok(if q.is_zero() { total } else { BigUint::zero() });
    }
    let rep = macaulay_rep(q, d)?;
    let shifted: BigUint = rep.terms.iter().map(|(a, i)| binom_big(&(a + tau), i + tau)).sum();
    Ok(total - shifted)
}

/// Guaranteed `dim I_{d+tau}` when `dim I_d >= binom(N+d-q-1, d-q)`.
pub fn corollary_growth(n_vars: u64, d: u32, q: u32, tau: u32) -> Result<BigUint, MacaulayError> {
    if q >= d {
        return Err(MacaulayError::QNotBelowDegree { q, d });
    }
    let e = (tau + d - q) as u64;
    Ok(binom_u64(n_vars + e - 1, e))
}

/// `binom(a+b, b) = sum_{j=1}^{q} binom(a+b-j, b-j+1) + binom(a+b-q, b-q)`.
pub fn binom_identity_check(a: u64, b: u64, q: u64) -> Result<bool, MacaulayError> {
    if q > b {
        return Err(MacaulayError::QAboveB { q, b });
    }
    let lhs = binom_u64(a + b, b);
    let sum: BigUint = (1..=q).map(|j| binom_u64(a + b - j, b - j + 1)).sum();
    Ok(lhs == sum + binom_u64(a + b - q, b - q))
}

/// Checks `dim I_{d+1} >= macaulay_min_growth(full - dim I_d, d, 1, n_vars)` for
/// a pair of consecutive component dimensions.
pub fn respects_min_growth(dim_d: u64, dim_next: u64, d: u32, n_vars: u64) -> Result<bool, MacaulayError> {
    let full = binom_u64(n_vars + d as u64 - 1, d as u64);
    let q = full - BigUint::from(dim_d);
    Ok(BigUint::from(dim_next) >= macaulay_min_growth(&q, d, 1, n_vars)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pairs(r: &MacaulayRep) -> Vec<(u64, u32)> {
        r.terms.iter().map(|(a, i)| (a.try_into().unwrap(), *i)).collect()
    }

    #[test]
    fn degree_zero_growth() {
        assert_eq!(macaulay_min_growth(&BigUint::zero(), 0, 2, 4).unwrap(), 10u32.into());
        assert_eq!(macaulay_min_growth(&BigUint::one(), 0, 2, 4).unwrap(), BigUint::zero());
        assert!(respects_min_growth(1, 4, 0, 4).unwrap());
        assert!(!respects_min_growth(1, 3, 0, 4).unwrap());
    }

    #[test]
    fn small_representations() {
        assert_eq!(pairs(&macaulay_rep(&10u32.into(), 3).unwrap()), vec![(5, 3)]);
        assert_eq!(pairs(&macaulay_rep(&1u32.into(), 4).unwrap()), vec![(4, 4)]);
        assert_eq!(pairs(&macaulay_rep(&9u32.into(), 3).unwrap()), vec![(4, 3), (3, 2), (2, 1)]);
        assert!(macaulay_rep(&0u32.into(), 3).unwrap().terms.is_empty());
        assert_eq!(macaulay_rep(&5u32.into(), 0), Err(MacaulayError::ZeroDegree));
    }

    #[test]
    fn growth_examples() {
        // tau = 0 and Q = 0 edge cases
        assert_eq!(macaulay_min_growth(&7u32.into(), 3, 0, 4).unwrap(), BigUint::from(20u32 - 7));
        assert_eq!(macaulay_min_growth(&0u32.into(), 2, 2, 3).unwrap(), binom_u64(6, 4));
        // 3 = binom(3,2) at d = 2, N = 3: 10 - binom(4,3)
        assert_eq!(macaulay_min_growth(&3u32.into(), 2, 1, 3).unwrap(), BigUint::from(6u32));
        assert!(matches!(macaulay_min_growth(&7u32.into(), 2, 1, 3), Err(MacaulayError::QuotientTooLarge { .. })));
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_growth(2, 3, 1, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(corollary_growth(9, 4, 1, 0).unwrap(), binom_u64(11, 3));
        assert!(corollary_growth(9, 4, 4, 0).is_err());
        assert!(binom_identity_check(1, 2, 1).unwrap());
        assert!(binom_identity_check(5, 5, 0).unwrap());
        assert!(binom_identity_check(1, 2, 3).is_err());
    }

    proptest! {
        #[test]
        fn reconstruction_and_validity(q in 0u64..1_000_000, d in 1u32..9) {
            let r = macaulay_rep(&q.into(), d).unwrap();
            prop_assert!(r.is_valid());
            prop_assert_eq!(r.value(), BigUint::from(q));
        }

        #[test]
        fn growth_monotone(n in 1u64..8, d in 1u32..5, tau in 0u32..4, frac in 0.0f64..1.0) {
            let full: u64 = binom_u64(n + d as u64 - 1, d as u64).try_into().unwrap();
            let q = ((full as f64) * frac) as u64;
            let g = |q: u64, t: u32| macaulay_min_growth(&q.into(), d, t, n).unwrap();
            prop_assert!(g(q, tau + 1) >= g(q, tau));
            if q < full {
                prop_assert!(g(q + 1, tau) <= g(q, tau));
            }
        }

        #[test]
        fn corollary_matches_growth(n in 1u64..12, d in 1u32..12, q in 0u32..12, tau in 0u32..12) {
            prop_assume!(q < d);
            let full = binom_u64(n + d as u64 - 1, d as u64);
            let quotient = full - binom_u64(n + (d - q) as u64 - 1, (d - q) as u64);
            prop_assert_eq!(corollary_growth(n, d, q, tau).unwrap(), macaulay_min_growth(&quotient, d, tau, n).unwrap());
        }
    }
}
