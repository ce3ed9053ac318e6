//! Text and JSON serialization of polynomials.
//!
//! Text form: one term per line, `coeff * var^e * var ...`, terms in
//! descending graded-lex order. Exponents of one are written bare. The zero
//! polynomial is the single line `0`. Blank lines and `#` comments are
//! ignored when parsing.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{Monomial, PolyError, Rational, SparsePolynomial, Var};

pub fn to_text(p: &SparsePolynomial) -> String {
    if p.is_zero() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for (m, c) in p.sorted_terms() {
        out.push_str(&c.to_string());
        for &(v, e) in m.factors() {
            out.push_str(" * ");
            out.push_str(&v.name());
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_text(src: &str) -> Result<SparsePolynomial, PolyError> {
    let mut terms = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| PolyError::Parse { line: lineno + 1, msg };
        let mut coeff = Rational::one();
        let mut pairs = Vec::new();
        for (i, tok) in line.split('*').map(str::trim).enumerate() {
            if i == 0 {
                if let Ok(c) = Rational::from_str(tok) {
                    coeff = c;
                    continue;
                }
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<u32>().map_err(|_| err(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            let v = Var::parse(name).ok_or_else(|| err(format!("unknown variable `{name}`")))?;
            pairs.push((v, exp));
        }
        terms.push((Monomial::from_pairs(pairs), coeff));
    }
    Ok(SparsePolynomial::from_terms(terms))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exponents: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub degree: Option<u32>,
    pub terms: Vec<TermJson>,
}

pub fn to_json(p: &SparsePolynomial) -> PolynomialJson {
    PolynomialJson {
        degree: p.degree(),
        terms: p
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exponents: m.factors().iter().map(|&(v, e)| (v.name(), e)).collect(),
            })
            .collect(),
    }
}

pub fn from_json(doc: &PolynomialJson) -> Result<SparsePolynomial, PolyError> {
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.iter().enumerate() {
        let err = |msg: String| PolyError::Parse { line: i + 1, msg };
        let c = Rational::from_str(&t.coeff).map_err(|_| err(format!("bad coefficient `{}`", t.coeff)))?;
        let mut pairs = Vec::new();
        for (name, &e) in &t.exponents {
            pairs.push((Var::parse(name).ok_or_else(|| err(format!("unknown variable `{name}`")))?, e));
        }
        terms.push((Monomial::from_pairs(pairs), c));
    }
    let p = SparsePolynomial::from_terms(terms);
    if let Some(d) = doc.degree {
        if p.degree() != Some(d) {
            return Err(PolyError::Parse { line: 0, msg: format!("declared degree {d} does not match terms") });
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{make_determinant, make_padded_permanent};
    use proptest::prelude::*;

    #[test]
    fn text_of_det2() {
        let det = make_determinant(2).unwrap();
        assert_eq!(to_text(&det), "1 * x_1_1 * x_2_2\n-1 * x_1_2 * x_2_1\n");
    }

    #[test]
    fn text_with_exponents_and_comments() {
        let p = parse_text("# padded\n1 * l^3 * y_1_1 * y_2_2\n\n x_1_1 # bare coefficient\n-3/2\n").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.degree(), None);
        assert!(parse_text("2 * z_1").is_err());
        assert!(parse_text("2 * l^x").is_err());
        assert_eq!(parse_text("0").unwrap(), SparsePolynomial::zero());
    }

    #[test]
    fn json_declared_degree_is_checked() {
        let p = make_padded_permanent(2, 4).unwrap();
        let mut doc = to_json(&p);
        assert_eq!(from_json(&doc).unwrap(), p);
        doc.degree = Some(3);
        assert!(from_json(&doc).is_err());
    }

    fn small_poly() -> impl Strategy<Value = SparsePolynomial> {
        let vars = [Var::x(1, 1), Var::x(2, 3), Var::y(1, 2), Var::ELL, Var::ELL2];
        prop::collection::vec((prop::collection::vec((0usize..5, 0u32..4), 0..4), -20i64..20, 1i64..5), 0..8).prop_map(move |ts| {
            SparsePolynomial::from_terms(ts.into_iter().map(|(ps, n, d)| {
                (Monomial::from_pairs(ps.into_iter().map(|(i, e)| (vars[i], e))), Rational::new(n.into(), d.into()))
            }))
        })
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(p in small_poly()) {
            prop_assert_eq!(parse_text(&to_text(&p)).unwrap(), p.clone());
            let s = serde_json::to_string(&to_json(&p)).unwrap();
            let back: PolynomialJson = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(from_json(&back).unwrap(), p);
        }
    }
}
