//! Log-space diagnostics: rigorous intervals for the logarithms used in the
//! asymptotic case analysis, next to their leading-order approximations.

use serde::Serialize;

use super::ball::{ln_binom, ln_factorial, Ball};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum LogEstimate {
    /// `ln q!`
    Factorial { q: u64 },
    /// `ln binom(a, b)`
    Binomial { a: u64, b: u64 },
    /// `ln binom(2m, m)`, approximately `m ln 4`.
    CentralBinomial { m: u64 },
    /// `ln binom(n+k, 2k)`, approximately `k ln((n^2-k^2)/(4k^2))`.
    LeadingCount { n: u64, k: u64 },
    /// `ln(binom(n^2+tau-2k, tau) / binom(n^2+tau-1, tau))`, approximately `-2k ln(tau/n^2 + 1)`.
    ShiftRatio { n: u64, k: u64, tau: u64 },
    /// `ln binom(n^2+m-1, m)`, approximately `m ln(n^2/m - (m-1)/m) + m`.
    PaddedDegree { n: u64, m: u64 },
    /// `2 ln binom(n, k)`.
    DetPartials { n: u64, k: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct LogEstimateResult {
    pub estimate: LogEstimate,
    /// Rigorous enclosure of the exact natural log; `None` when the quantity is zero.
    pub interval: Option<(f64, f64)>,
    /// Leading-order approximation without the error terms, where one exists.
    pub approximation: Option<f64>,
    pub precision: u32,
}

fn lb(a: u64, b: u64, prec: u32) -> Option<Ball> {
    ln_binom(a as i128, b as i128, prec)
}

pub fn log_estimate(e: LogEstimate, prec: u32) -> LogEstimateResult {
    let f = |x: u64| x as f64;
    let (ball, approx) = match e {
        LogEstimate::Factorial { q } => {
            let approx = (q > 0).then(|| f(q) * f(q).ln() - f(q) + 0.5 * (2.0 * std::f64::consts::PI * f(q)).ln());
            (Some(ln_factorial(q, prec)), approx)
        }
        LogEstimate::Binomial { a, b } => (lb(a, b, prec), None),
        LogEstimate::CentralBinomial { m } => (lb(2 * m, m, prec), Some(f(m) * 4f64.ln())),
        LogEstimate::LeadingCount { n, k } => {
            let approx = (k > 0).then(|| f(k) * ((f(n) * f(n) - f(k) * f(k)) / (4.0 * f(k) * f(k))).ln());
            (lb(n + k, 2 * k, prec), approx)
        }
        LogEstimate::ShiftRatio { n, k, tau } => {
            let n2 = (n * n) as i128;
            let (k, t) = (k as i128, tau as i128);
            let ball = match (ln_binom(n2 + t - 2 * k, t, prec), ln_binom(n2 + t - 1, t, prec)) {
                (Some(a), Some(b)) => Some(a.sub(&b)),
                _ => None,
            };
            (ball, Some(-2.0 * k as f64 * (tau as f64 / (n2 as f64) + 1.0).ln()))
        }
        LogEstimate::PaddedDegree { n, m } => {
            let approx = (m > 0).then(|| f(m) * (f(n) * f(n) / f(m) - (f(m) - 1.0) / f(m)).ln() + f(m));
            (lb(n * n + m - 1, m, prec), approx)
        }
        LogEstimate::DetPartials { n, k } => (lb(n, k, prec).map(|b| b.mul_int(&2.into())), None),
    };
    LogEstimateResult { estimate: e, interval: ball.map(|b| b.bounds_f64()), approximation: approx, precision: prec }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::factorial;
    use crate::bounds::ball::ln_uint;

    #[test]
    fn factorial_interval_contains_exact_log() {
        for q in [0u64, 1, 5, 100, 9_999, 10_000] {
            let r = log_estimate(LogEstimate::Factorial { q }, 128);
            let (lo, hi) = r.interval.unwrap();
            let exact = ln_uint(&factorial(q), 128);
            let (elo, ehi) = exact.bounds_f64();
            assert!(lo <= ehi && elo <= hi, "q = {q}");
        }
    }

    #[test]
    fn central_binomial_leading_order() {
        let r = log_estimate(LogEstimate::CentralBinomial { m: 500 }, 128);
        let (lo, hi) = r.interval.unwrap();
        let a = r.approximation.unwrap();
        // m ln 4 overshoots by about ln(sqrt(pi m))
        assert!(a > hi && a - lo < 5.0);
    }

    #[test]
    fn zero_quantity_has_no_interval() {
        assert!(log_estimate(LogEstimate::Binomial { a: 3, b: 5 }, 64).interval.is_none());
    }
}
