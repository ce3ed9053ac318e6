//! Closed-form bounds on Jacobian-ideal dimensions, evaluated exactly or as
//! rigorous log-intervals.

pub mod ball;
mod estimate;
mod expr;

use num_bigint::BigInt;
use serde::Serialize;

pub use estimate::{log_estimate, LogEstimate, LogEstimateResult};
pub use expr::{compare, evaluate, ArithmeticMode, ComparisonResult, Evaluated, Expr, LogValue, Outcome, EXACT_DIGIT_LIMIT, MAX_PREC};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("padded upper bound needs k < n - m (got n = {n}, m = {m}, k = {k})")]
    PaddedOutOfRange { n: u64, m: u64, k: u64 },
    #[error("argument overflow")]
    Overflow,
}

/// Names of the closed-form quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaddedUpper,
    DetPartials,
    TwoPowerDim,
    LeadingMonomialLower,
    PermPartialsUpper,
    CrudeUpper,
    FullComponent,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::PaddedUpper => "padded-upper",
            Provenance::DetPartials => "det-partials",
            Provenance::TwoPowerDim => "two-power-dim",
            Provenance::LeadingMonomialLower => "leading-monomial-lower",
            Provenance::PermPartialsUpper => "perm-partials-upper",
            Provenance::CrudeUpper => "crude-upper",
            Provenance::FullComponent => "full-component",
        }
    }
}

/// A closed-form quantity together with its symbolic form.
#[derive(Clone, Debug)]
pub struct BigQuantity {
    pub expr: Expr,
    pub provenance: Provenance,
}

impl BigQuantity {
    pub fn exact(&self) -> BigInt {
        self.expr.exact()
    }

    pub fn evaluate(&self, mode: ArithmeticMode) -> Evaluated {
        evaluate(&self.expr, mode)
    }
}

fn sq(n: u64) -> Result<i128, BoundsError> {
    n.checked_mul(n).map(|v| v as i128).ok_or(BoundsError::Overflow)
}

/// `binom(n^2+m+tau-1, m+tau)`: upper bound on the padded permanent's shifted dimension.
pub fn padded_upper(n: u64, m: u64, k: u64, tau: u64) -> Result<BigQuantity, BoundsError> {
    if k + m >= n {
        return Err(BoundsError::PaddedOutOfRange { n, m, k });
    }
    let (m, tau) = (m as i128, tau as i128);
    Ok(BigQuantity { expr: Expr::binom(sq(n)? + m + tau - 1, m + tau), provenance: Provenance::PaddedUpper })
}

/// `binom(n, k)^2`.
pub fn det_partials_count(n: u64, k: u64) -> BigQuantity {
    let (n, k) = (n as i128, k as i128);
    BigQuantity { expr: Expr::product(1, vec![(n, k), (n, k)]), provenance: Provenance::DetPartials }
}

/// `2 binom(n^2+tau-1, tau) - binom(n^2+tau-(n-k)-1, tau-(n-k))`.
pub fn two_power_dim(n: u64, k: u64, tau: u64) -> Result<BigQuantity, BoundsError> {
    two_power_dim_in(sq(n)? as u64, n, k, tau)
}

/// [`two_power_dim`] with an explicit ambient dimension.
pub fn two_power_dim_in(ambient: u64, n: u64, k: u64, tau: u64) -> Result<BigQuantity, BoundsError> {
    let (big_n, d, tau) = (ambient as i128, n as i128 - k as i128, tau as i128);
    let expr = Expr::binom(big_n + tau - 1, tau).scaled(2).plus(Expr::binom(big_n + tau - d - 1, tau - d).scaled(-1));
    Ok(BigQuantity { expr, provenance: Provenance::TwoPowerDim })
}

/// `binom(n+k, 2k) binom(n^2+tau-2k, tau)`: lower bound from leading monomials of minors
/// on the diagonal and superdiagonal.
pub fn leading_monomial_lower(n: u64, k: u64, tau: u64) -> Result<BigQuantity, BoundsError> {
    let (ni, k, tau) = (n as i128, k as i128, tau as i128);
    let expr = Expr::product(1, vec![(ni + k, 2 * k), (sq(n)? + tau - 2 * k, tau)]);
    Ok(BigQuantity { expr, provenance: Provenance::LeadingMonomialLower })
}

/// `sum_{j<=k} binom(m, j)^2`.
pub fn perm_partials_upper(m: u64, k: u64) -> BigQuantity {
    let m = m as i128;
    let terms = (0..=(k as i128).min(m)).map(|j| Expr::product(1, vec![(m, j), (m, j)]));
    let expr = terms.reduce(Expr::plus).expect("j = 0 term");
    BigQuantity { expr, provenance: Provenance::PermPartialsUpper }
}

/// `perm_partials_upper(m, k) * binom(n^2+tau-1, tau)`.
pub fn crude_upper(n: u64, m: u64, k: u64, tau: u64) -> Result<BigQuantity, BoundsError> {
    let shift = (sq(n)? + tau as i128 - 1, tau as i128);
    let mut expr = perm_partials_upper(m, k).expr;
    for t in &mut expr.terms {
        t.binoms.push(shift);
    }
    Ok(BigQuantity { expr, provenance: Provenance::CrudeUpper })
}

/// `binom(v+d-1, d)`: the dimension of `S^d` of a `v`-dimensional space.
pub fn full_component(v: u64, d: u64) -> BigQuantity {
    BigQuantity { expr: Expr::binom(v as i128 + d as i128 - 1, d as i128), provenance: Provenance::FullComponent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::binom;
    use num_bigint::BigUint;

    fn v(q: Result<BigQuantity, BoundsError>) -> BigInt {
        q.unwrap().exact()
    }

    #[test]
    fn padded_upper_values() {
        assert_eq!(v(padded_upper(3, 2, 0, 0)), 45.into());
        assert_eq!(v(padded_upper(3, 0, 0, 0)), 1.into());
        assert!(padded_upper(4, 2, 2, 0).is_err());
    }

    #[test]
    fn small_values() {
        assert_eq!(det_partials_count(3, 1).exact(), 9.into());
        assert_eq!(det_partials_count(5, 0).exact(), 1.into());
        assert_eq!(det_partials_count(5, 5).exact(), 1.into());
        assert_eq!(v(two_power_dim(3, 1, 0)), 2.into());
        assert_eq!(v(two_power_dim(3, 1, 1)), 18.into());
        assert_eq!(v(two_power_dim(4, 1, 3)), BigInt::from(binom(18, 3)) * 2 - 1);
        assert_eq!(v(leading_monomial_lower(3, 1, 1)), 48.into());
        assert_eq!(v(leading_monomial_lower(4, 2, 0)), 15.into());
        assert_eq!(v(leading_monomial_lower(3, 0, 2)), BigInt::from(binom(11, 2)));
        assert_eq!(perm_partials_upper(2, 1).exact(), 5.into());
        assert_eq!(perm_partials_upper(4, 0).exact(), 1.into());
        assert_eq!(v(crude_upper(3, 2, 1, 1)), 45.into());
        assert_eq!(v(crude_upper(3, 2, 1, 0)), 5.into());
    }

    #[test]
    fn vandermonde() {
        for m in (0..=1000u64).step_by(37).chain([1000]) {
            assert_eq!(perm_partials_upper(m, m).exact(), BigInt::from(binom(2 * m as i128, m as i128)));
            assert_eq!(perm_partials_upper(m, m + 3).exact(), BigInt::from(binom(2 * m as i128, m as i128)));
        }
    }

    #[test]
    fn leading_lower_is_below_det_partials() {
        for n in 1..=50u64 {
            for k in 0..=n {
                assert!(v(leading_monomial_lower(n, k, 0)) <= det_partials_count(n, k).exact(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn exact_log_lies_in_interval() {
        for q in [crude_upper(7, 3, 2, 40).unwrap(), two_power_dim(6, 2, 30).unwrap(), padded_upper(9, 2, 1, 100).unwrap()] {
            let exact = q.exact();
            let Evaluated::Log(LogValue::Ball(b)) = q.evaluate(ArithmeticMode::Interval) else { panic!() };
            let e = ball::ln_uint(&exact.to_biguint().unwrap_or_else(BigUint::default), b.prec());
            assert!(b.overlaps(&e));
        }
    }
}
