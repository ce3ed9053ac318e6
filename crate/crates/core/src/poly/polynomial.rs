use std::collections::BTreeSet;
use std::collections::hash_map::Entry;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{Monomial, PolyError, Rational, Substitution, Var};

/// Exact sparse multivariate polynomial over the rationals.
///
/// Terms live in a hash map keyed by the packed exponent vector; zero
/// coefficients are never stored. The zero polynomial is the empty map.
#[derive(Clone, Default)]
pub struct SparsePolynomial {
    terms: FxHashMap<Monomial, Rational>,
    degree: Option<u32>,
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SparsePolynomial {}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        Self::from_terms([(m, c)])
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        Self::from_map(map)
    }

    fn from_map(mut terms: FxHashMap<Monomial, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let mut degrees = terms.keys().map(Monomial::degree);
        let degree = match degrees.next() {
            Some(d) if degrees.all(|e| e == d) => Some(d),
            _ => None,
        };
        SparsePolynomial { terms, degree }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The homogeneous degree, or `None` for the zero polynomial and for
    /// inhomogeneous polynomials.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree.is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| b.0.cmp(a.0));
        v
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp(b.0))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
            degree: self.degree,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SparsePolynomial {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
            degree: self.degree.map(|d| d + m.degree()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the differential operator whose exponent pattern is `d`.
    ///
    /// Plain (not divided-power) derivatives: `d/dv` applied `j` times to
    /// `v^e` yields `e (e-1) ... (e-j+1) v^(e-j)`.
    pub fn differentiate(&self, d: &Monomial) -> Self {
        if d.is_one() {
            return self.clone();
        }
        let mut map = FxHashMap::default();
        'terms: for (m, c) in &self.terms {
            let mut factor = BigInt::one();
            for &(v, j) in d.factors() {
                let e = m.exponent(v);
                if e < j {
                    continue 'terms;
                }
                for r in (e - j + 1)..=e {
                    factor *= r;
                }
            }
            let rest = d.quotient_of(m).expect("exponents checked above");
            accumulate(&mut map, rest, c * Rational::from_integer(factor));
        }
        Self::from_map(map)
    }

    /// Replaces every variable by its linear image and collects terms.
    pub fn substitute(&self, a: &Substitution) -> Result<Self, PolyError> {
        let mut powers: FxHashMap<(Var, u32), SparsePolynomial> = FxHashMap::default();
        let mut map = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut prod = SparsePolynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                let p = match powers.entry((v, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(slot) => {
                        let image = a.image(v).ok_or_else(|| PolyError::UnmappedVariable(v.name()))?;
                        slot.insert(image.pow(e))
                    }
                };
                prod = &prod * &*p;
                if prod.is_zero() {
                    break;
                }
            }
            for (mm, cc) in prod.terms {
                accumulate(&mut map, mm, cc);
            }
        }
        Ok(Self::from_map(map))
    }

    /// Evaluates at a point given by `value(var)`.
    pub fn evaluate(&self, mut value: impl FnMut(Var) -> Rational) -> Rational {
        let mut cache: FxHashMap<Var, Rational> = FxHashMap::default();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let x = cache.entry(v).or_insert_with(|| value(v));
                for _ in 0..e {
                    t *= &*x;
                }
            }
            total += t;
        }
        total
    }
}

fn accumulate(map: &mut FxHashMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut map = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut map, m.clone(), c.clone());
        }
        SparsePolynomial::from_map(map)
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut map = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut map, m.clone(), -c.clone());
        }
        SparsePolynomial::from_map(map)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
            degree: self.degree,
        }
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut map = FxHashMap::default();
        map.reserve(self.terms.len() * rhs.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                accumulate(&mut map, a.mul(b), ca * cb);
            }
        }
        SparsePolynomial::from_map(map)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn v(var: Var) -> SparsePolynomial {
        SparsePolynomial::var(var)
    }

    #[test]
    fn zero_is_empty_without_degree() {
        let z = SparsePolynomial::zero();
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        let p = &v(Var::ELL) - &v(Var::ELL);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn product_of_powers() {
        let l = v(Var::ELL);
        let l2 = l.pow(2);
        assert_eq!(&l * &l2, l.pow(3));
        assert_eq!((&l * &l2).degree(), Some(3));
        assert_eq!(&l * &SparsePolynomial::one(), l);
    }

    #[test]
    fn mixed_degree_is_not_homogeneous() {
        let p = &v(Var::ELL) + &SparsePolynomial::one();
        assert_eq!(p.degree(), None);
        assert_eq!(p.total_degree(), Some(1));
    }

    #[test]
    fn derivative_uses_falling_factorials() {
        let p = v(Var::ELL).pow(3);
        let d2 = p.differentiate(&Monomial::pow(Var::ELL, 2));
        assert_eq!(d2, v(Var::ELL).scale(&q(6)));
        assert!(p.differentiate(&Monomial::pow(Var::ELL, 4)).is_zero());
        assert!(p.differentiate(&Monomial::var(Var::ELL1)).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = &(&v(Var::x(1, 1)) * &v(Var::x(2, 2))) - &v(Var::ELL).pow(2);
        let val = p.evaluate(|var| if var == Var::ELL { q(3) } else { q(2) });
        assert_eq!(val, q(-5));
    }
}
