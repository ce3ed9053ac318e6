//! Signed sums of products of binomials, evaluated exactly or as log-intervals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::ball::{ln_binom, ln_uint, Ball};
use crate::binomial::binom;

/// Results with more decimal digits than this are only handled in log space.
pub const EXACT_DIGIT_LIMIT: f64 = 1e6;
pub const START_PREC: u32 = 64;
pub const MAX_PREC: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    /// Factors `binom(a, b)`.
    pub binoms: Vec<(i128, i128)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

/// Natural log of a nonnegative quantity.
#[derive(Clone, Debug)]
pub enum LogValue {
    Zero,
    Ball(Ball),
}

impl Expr {
    pub fn binom(a: i128, b: i128) -> Self {
        Expr { terms: vec![Term { coeff: 1.into(), binoms: vec![(a, b)] }] }
    }

    pub fn product(coeff: impl Into<BigInt>, binoms: Vec<(i128, i128)>) -> Self {
        Expr { terms: vec![Term { coeff: coeff.into(), binoms }] }
    }

    pub fn plus(mut self, mut other: Expr) -> Self {
        self.terms.append(&mut other.terms);
        self
    }

    pub fn scaled(mut self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        for t in &mut self.terms {
            t.coeff *= &c;
        }
        self
    }

    fn live_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| !t.coeff.is_zero() && t.binoms.iter().all(|&(a, b)| a >= 0 && b >= 0 && b <= a))
    }

    pub fn exact(&self) -> BigInt {
        self.live_terms()
            .map(|t| t.binoms.iter().fold(t.coeff.clone(), |acc, &(a, b)| acc * BigInt::from(binom(a, b))))
            .sum()
    }

    /// Upper estimate of the number of decimal digits of the value.
    pub fn digit_estimate(&self) -> f64 {
        let mut best = 0f64;
        let mut count = 0usize;
        for t in self.live_terms() {
            count += 1;
            let mut l = ln_uint(&t.coeff.magnitude().clone(), START_PREC);
            for &(a, b) in &t.binoms {
                l = l.add(&ln_binom(a, b, START_PREC).expect("live term"));
            }
            best = best.max(l.bounds_f64().1);
        }
        if count == 0 {
            return 1.0;
        }
        (best + (count as f64).ln()) / std::f64::consts::LN_10 + 1.0
    }

    /// Log of the value at a working precision. `None` when the sign cannot be
    /// certified positive at this precision; values that are certified
    /// negative are reported as an error.
    pub fn ln(&self, prec: u32) -> Result<Option<LogValue>, NegativeValue> {
        let mut logs: Vec<(bool, Ball)> = Vec::new();
        for t in self.live_terms() {
            let mut l = ln_uint(&t.coeff.magnitude().clone(), prec);
            for &(a, b) in &t.binoms {
                l = l.add(&ln_binom(a, b, prec).expect("live term"));
            }
            logs.push((t.coeff.is_positive(), l));
        }
        if logs.is_empty() {
            return Ok(Some(LogValue::Zero));
        }
        let pivot = logs.iter().max_by(|a, b| a.1.mid_f64().total_cmp(&b.1.mid_f64())).expect("nonempty").1.clone();
        let mut sum = Ball::zero(prec);
        for (pos, l) in &logs {
            let e = l.sub(&pivot).exp();
            sum = if *pos { sum.add(&e) } else { sum.sub(&e) };
        }
        if sum.hi() < BigInt::zero() {
            return Err(NegativeValue);
        }
        Ok(sum.ln().map(|s| LogValue::Ball(pivot.add(&s))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("expression evaluates to a negative number")]
pub struct NegativeValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArithmeticMode {
    /// Exact when both sides have at most 10^6 digits, log-intervals otherwise.
    Exact,
    Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Greater,
    Equal,
    Less,
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct ComparisonResult {
    pub outcome: Outcome,
    /// Mode actually used.
    pub mode: ArithmeticMode,
    /// Working precision in bits when intervals were used.
    pub precision: Option<u32>,
    pub lhs: Evaluated,
    pub rhs: Evaluated,
}

/// A value as it was evaluated during a comparison.
#[derive(Clone, Debug)]
pub enum Evaluated {
    Exact(BigInt),
    Log(LogValue),
    Unknown,
}

/// Compares two expressions, doubling precision up to [`MAX_PREC`] bits in interval mode.
pub fn compare(lhs: &Expr, rhs: &Expr, mode: ArithmeticMode) -> ComparisonResult {
    if mode == ArithmeticMode::Exact
        && lhs.digit_estimate() <= EXACT_DIGIT_LIMIT
        && rhs.digit_estimate() <= EXACT_DIGIT_LIMIT
    {
        let (l, r) = (lhs.exact(), rhs.exact());
        let outcome = match l.cmp(&r) {
            std::cmp::Ordering::Greater => Outcome::Greater,
            std::cmp::Ordering::Equal => Outcome::Equal,
            std::cmp::Ordering::Less => Outcome::Less,
        };
        return ComparisonResult { outcome, mode, precision: None, lhs: Evaluated::Exact(l), rhs: Evaluated::Exact(r) };
    }
    let mut prec = START_PREC;
    let mut last;
    loop {
        let l = lhs.ln(prec).ok().flatten();
        let r = rhs.ln(prec).ok().flatten();
        let outcome = match (&l, &r) {
            (Some(LogValue::Zero), Some(LogValue::Zero)) => Some(Outcome::Equal),
            (Some(LogValue::Zero), Some(LogValue::Ball(_))) => Some(Outcome::Less),
            (Some(LogValue::Ball(_)), Some(LogValue::Zero)) => Some(Outcome::Greater),
            (Some(LogValue::Ball(a)), Some(LogValue::Ball(b))) if a.definitely_gt(b) => Some(Outcome::Greater),
            (Some(LogValue::Ball(a)), Some(LogValue::Ball(b))) if a.definitely_lt(b) => Some(Outcome::Less),
            _ => None,
        };
        last = (l.map_or(Evaluated::Unknown, Evaluated::Log), r.map_or(Evaluated::Unknown, Evaluated::Log));
        if let Some(outcome) = outcome {
            return ComparisonResult { outcome, mode: ArithmeticMode::Interval, precision: Some(prec), lhs: last.0, rhs: last.1 };
        }
        if prec >= MAX_PREC {
            break;
        }
        prec *= 2;
    }
    ComparisonResult { outcome: Outcome::Unresolved, mode: ArithmeticMode::Interval, precision: Some(prec), lhs: last.0, rhs: last.1 }
}

/// Exact value when it has at most [`EXACT_DIGIT_LIMIT`] digits, log-interval otherwise.
pub fn evaluate(e: &Expr, mode: ArithmeticMode) -> Evaluated {
    if mode == ArithmeticMode::Exact && e.digit_estimate() <= EXACT_DIGIT_LIMIT {
        return Evaluated::Exact(e.exact());
    }
    let mut prec = START_PREC;
    loop {
        match e.ln(prec) {
            Ok(Some(v)) => return Evaluated::Log(v),
            Err(_) => return Evaluated::Unknown,
            Ok(None) if prec >= MAX_PREC => return Evaluated::Unknown,
            Ok(None) => prec *= 2,
        }
    }
}

impl Evaluated {
    pub fn exact(&self) -> Option<&BigInt> {
        match self {
            Evaluated::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// Outward-rounded bounds on the natural log.
    pub fn log_bounds(&self) -> Option<(f64, f64)> {
        match self {
            Evaluated::Exact(v) if v.is_positive() => {
                let b = ln_uint(&v.magnitude().clone(), START_PREC);
                Some(b.bounds_f64())
            }
            Evaluated::Exact(_) => None,
            Evaluated::Log(LogValue::Ball(b)) => Some(b.bounds_f64()),
            Evaluated::Log(LogValue::Zero) | Evaluated::Unknown => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Evaluated::Exact(v) if v.is_zero()) || matches!(self, Evaluated::Log(LogValue::Zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_interval_agree() {
        let e = Expr::binom(100, 30).scaled(2).plus(Expr::binom(90, 30).scaled(-1));
        let v = e.exact();
        let LogValue::Ball(b) = e.ln(128).unwrap().unwrap() else { panic!() };
        let exact_ln = ln_uint(v.magnitude(), 128);
        assert!(b.overlaps(&exact_ln));
    }

    #[test]
    fn zero_conventions() {
        let e = Expr::binom(3, 5).plus(Expr::binom(4, -1));
        assert_eq!(e.exact(), BigInt::zero());
        assert!(matches!(e.ln(64), Ok(Some(LogValue::Zero))));
        let r = compare(&e, &Expr::binom(3, 1), ArithmeticMode::Interval);
        assert_eq!(r.outcome, Outcome::Less);
    }

    #[test]
    fn equal_values_resolve_only_exactly() {
        let a = Expr::binom(40, 20);
        let b = Expr::binom(40, 20);
        assert_eq!(compare(&a, &b, ArithmeticMode::Exact).outcome, Outcome::Equal);
        assert_eq!(compare(&a, &b, ArithmeticMode::Interval).outcome, Outcome::Unresolved);
    }

    #[test]
    fn close_huge_values_resolve_in_log_space() {
        // binom(N, 10^6 + 1) vs binom(N, 10^6) at N = 10^8: ratio about 99
        let n = 100_000_000;
        let a = Expr::binom(n, 1_000_001);
        let b = Expr::binom(n, 1_000_000).scaled(98);
        let r = compare(&a, &b, ArithmeticMode::Exact);
        assert_eq!(r.mode, ArithmeticMode::Interval);
        assert_eq!(r.outcome, Outcome::Greater);
        let c = Expr::binom(n, 1_000_000).scaled(100);
        assert_eq!(compare(&a, &c, ArithmeticMode::Exact).outcome, Outcome::Less);
    }

    #[test]
    fn negative_expression_is_flagged() {
        let e = Expr::binom(10, 2).scaled(-1);
        assert_eq!(e.ln(64).unwrap_err(), NegativeValue);
    }
}
