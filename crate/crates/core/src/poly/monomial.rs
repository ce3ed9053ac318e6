use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Var;

/// A monomial stored as a sparse exponent vector sorted by variable id.
///
/// `Ord` is graded lexicographic with respect to the canonical variable
/// order: higher degree first, then the first variable (in canonical order)
/// whose exponents differ decides, the larger exponent winning.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: SmallVec<[(Var, u32); 6]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        let mut factors = SmallVec::new();
        if e > 0 {
            factors.push((v, e));
        }
        Monomial { factors }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// combining repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut factors: SmallVec<[(Var, u32); 6]> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort_unstable_by_key(|&(v, _)| v);
        let mut out: SmallVec<[(Var, u32); 6]> = SmallVec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => out.push((v, e)),
            }
        }
        Monomial { factors: out }
    }

    pub(crate) fn from_sorted_unchecked(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let factors: SmallVec<[(Var, u32); 6]> = pairs.into_iter().collect();
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e > 0));
        Monomial { factors }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// `(variable, exponent)` pairs in canonical variable order.
    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// `true` when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Var, u32); 6]> = SmallVec::with_capacity(other.factors.len());
        let mut mine = self.factors.iter().peekable();
        for &(v, e) in &other.factors {
            let take = match mine.peek() {
                Some(&&(w, f)) if w == v => {
                    mine.next();
                    if f > e {
                        return None;
                    }
                    f
                }
                Some(&&(w, _)) if w < v => return None,
                _ => 0,
            };
            if e > take {
                out.push((v, e - take));
            }
        }
        if mine.next().is_some() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// All divisors of `self` with total degree `k`.
    pub fn divisors_of_degree(&self, k: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        divisors_rec(&self.factors, k, &mut stack, &mut out);
        out
    }
}

fn divisors_rec(factors: &[(Var, u32)], remaining: u32, stack: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial::from_sorted_unchecked(stack.iter().copied()));
        return;
    }
    let Some((&(v, e), rest)) = factors.split_first() else {
        return;
    };
    let available: u32 = rest.iter().map(|&(_, f)| f).sum();
    for take in (0..=e.min(remaining)).rev() {
        if remaining - take > available {
            break;
        }
        if take > 0 {
            stack.push((v, take));
        }
        divisors_rec(rest, remaining - take, stack, out);
        if take > 0 {
            stack.pop();
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.factors.iter().zip(other.factors.iter()) {
            if a.0 != b.0 {
                // The side holding the canonically earlier variable is larger.
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: u32, t: u32) -> Monomial {
        Monomial::var(Var::x(s, t))
    }

    #[test]
    fn graded_lex_basics() {
        // degree dominates
        assert!(x(2, 2).mul(&x(2, 2)) > x(1, 1));
        // x11 > x12 > ... in degree one
        assert!(x(1, 1) > x(1, 2));
        assert!(x(1, 3) > x(2, 1));
        // x11*x22 > x12*x21 (diagonal leads)
        assert!(x(1, 1).mul(&x(2, 2)) > x(1, 2).mul(&x(2, 1)));
        // x11^2 > x11*x12
        assert!(Monomial::pow(Var::x(1, 1), 2) > x(1, 1).mul(&x(1, 2)));
    }

    #[test]
    fn division_and_divisors() {
        let m = Monomial::from_pairs([(Var::x(1, 1), 2), (Var::ELL, 1)]);
        let d = Monomial::var(Var::x(1, 1));
        assert!(d.divides(&m));
        assert_eq!(d.quotient_of(&m), Some(Monomial::from_pairs([(Var::x(1, 1), 1), (Var::ELL, 1)])));
        assert_eq!(Monomial::var(Var::ELL2).quotient_of(&m), None);
        let divs = m.divisors_of_degree(2);
        assert_eq!(divs.len(), 2);
        assert!(divs.iter().all(|q| q.degree() == 2 && q.divides(&m)));
        assert_eq!(m.divisors_of_degree(3), vec![m.clone()]);
        assert!(m.divisors_of_degree(4).is_empty());
    }

    #[test]
    fn from_pairs_combines() {
        let m = Monomial::from_pairs([(Var::ELL, 1), (Var::x(1, 1), 0), (Var::ELL, 2)]);
        assert_eq!(m, Monomial::pow(Var::ELL, 3));
        assert_eq!(m.degree(), 3);
    }
}
