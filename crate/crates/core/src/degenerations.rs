//! Explicit linear degenerations of `det_n`.

use num_traits::One;
use serde::Serialize;

use crate::poly::{make_determinant, Monomial, PolyError, Rational, SparsePolynomial, Substitution, Var};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DegenerationError {
    #[error("block degeneration needs (m+1)(n-k) <= n, got ({m}+1)({n}-{k}) = {lhs} > {n}")]
    BlockConstraint { n: u32, m: u32, k: u32, lhs: u64 },
    #[error("two-power degeneration needs n >= 2 (got {0})")]
    TooSmall(u32),
    #[error("need m >= 1 and k <= n (got n = {n}, m = {m}, k = {k})")]
    BadParameters { n: u32, m: u32, k: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Whether a block instance satisfies the inequality strictly or with equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockRegime {
    Strict,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DegenerationKind {
    C1Block { n: u32, m: u32, k: u32, regime: BlockRegime },
    C3TwoPower { n: u32 },
    Custom { n: u32 },
}

#[derive(Clone, Debug)]
pub struct DegenerationSpec {
    pub kind: DegenerationKind,
    pub substitution: Substitution,
}

impl DegenerationSpec {
    pub fn n(&self) -> u32 {
        match self.kind {
            DegenerationKind::C1Block { n, .. } | DegenerationKind::C3TwoPower { n } | DegenerationKind::Custom { n } => n,
        }
    }

    /// The degenerated determinant.
    pub fn apply(&self) -> Result<SparsePolynomial, DegenerationError> {
        Ok(make_determinant(self.n())?.substitute(&self.substitution)?)
    }

    /// Image of `D(det_n)` under the substitution, for a differential monomial `D` in the `x` variables.
    pub fn partial_image(&self, d: &Monomial) -> Result<SparsePolynomial, DegenerationError> {
        Ok(make_determinant(self.n())?.differentiate(d).substitute(&self.substitution)?)
    }

    /// A user-supplied substitution applied to `det_n`; unmapped matrix entries stay fixed.
    pub fn custom(n: u32, mut substitution: Substitution) -> Result<Self, DegenerationError> {
        for s in 1..=n {
            for t in 1..=n {
                if substitution.image(Var::x(s, t)).is_none() {
                    substitution.set(Var::x(s, t), SparsePolynomial::var(Var::x(s, t)))?;
                }
            }
        }
        Ok(DegenerationSpec { kind: DegenerationKind::Custom { n }, substitution })
    }
}

fn matrix_substitution(n: u32, entry: impl Fn(u32, u32) -> SparsePolynomial) -> Result<Substitution, PolyError> {
    let mut sub = Substitution::new();
    for s in 1..=n {
        for t in 1..=n {
            sub.set(Var::x(s, t), entry(s, t))?;
        }
    }
    Ok(sub)
}

/// `n-k` copies of the `m x m` block `(y^i_j)` down the diagonal, `l` on the
/// rest of the diagonal, zero elsewhere.
pub fn c1_block_substitution(n: u32, m: u32, k: u32) -> Result<DegenerationSpec, DegenerationError> {
    if m == 0 || k > n {
        return Err(DegenerationError::BadParameters { n, m, k });
    }
    let blocks = n - k;
    let lhs = (m as u64 + 1) * blocks as u64;
    if lhs > n as u64 {
        return Err(DegenerationError::BlockConstraint { n, m, k, lhs });
    }
    let covered = m * blocks;
    let sub = matrix_substitution(n, |s, t| {
        let (bs, bt) = ((s - 1) / m, (t - 1) / m);
        if s <= covered && t <= covered && bs == bt {
            SparsePolynomial::var(Var::y((s - 1) % m + 1, (t - 1) % m + 1))
        } else if s > covered && s == t {
            SparsePolynomial::var(Var::ELL)
        } else {
            SparsePolynomial::zero()
        }
    })?;
    let regime = if lhs < n as u64 { BlockRegime::Strict } else { BlockRegime::Boundary };
    Ok(DegenerationSpec { kind: DegenerationKind::C1Block { n, m, k, regime }, substitution: sub })
}

/// `l1` on the diagonal, `l2` on the subdiagonal and in the corner `(1, n)`;
/// the corner entry is negated for even `n` so the image is `l1^n + l2^n`.
pub fn c3_two_powers(n: u32) -> Result<DegenerationSpec, DegenerationError> {
    if n < 2 {
        return Err(DegenerationError::TooSmall(n));
    }
    let corner_sign = if n.is_multiple_of(2) { -Rational::one() } else { Rational::one() };
    let sub = matrix_substitution(n, |s, t| {
        if s == t {
            SparsePolynomial::var(Var::ELL1)
        } else if s == t + 1 {
            SparsePolynomial::var(Var::ELL2)
        } else if s == 1 && t == n {
            SparsePolynomial::var(Var::ELL2).scale(&corner_sign)
        } else {
            SparsePolynomial::zero()
        }
    })?;
    Ok(DegenerationSpec { kind: DegenerationKind::C3TwoPower { n }, substitution: sub })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::format::parse_text;

    #[test]
    fn two_powers_are_normalized() {
        for n in 2..=5 {
            let r = c3_two_powers(n).unwrap().apply().unwrap();
            let want = &SparsePolynomial::var(Var::ELL1).pow(n) + &SparsePolynomial::var(Var::ELL2).pow(n);
            assert_eq!(r, want, "n = {n}");
        }
        assert_eq!(c3_two_powers(1).unwrap_err(), DegenerationError::TooSmall(1));
    }

    #[test]
    fn raw_two_by_two_is_a_difference_of_squares() {
        let raw = matrix_substitution(2, |s, t| {
            SparsePolynomial::var(if s == t { Var::ELL1 } else { Var::ELL2 })
        })
        .unwrap();
        let r = make_determinant(2).unwrap().substitute(&raw).unwrap();
        assert_eq!(r, parse_text("l1^2\n-1 * l2^2").unwrap());
    }

    #[test]
    fn block_example_images() {
        let spec = c1_block_substitution(6, 2, 4).unwrap();
        assert_eq!(spec.kind, DegenerationKind::C1Block { n: 6, m: 2, k: 4, regime: BlockRegime::Boundary });
        let d = Monomial::from_pairs([(Var::x(2, 2), 1), (Var::x(4, 4), 1), (Var::x(5, 5), 1), (Var::x(6, 6), 1)]);
        assert_eq!(spec.partial_image(&d).unwrap(), SparsePolynomial::var(Var::y(1, 1)).pow(2));
        let r = spec.apply().unwrap();
        assert_eq!(r.degree(), Some(6));
        assert!(c1_block_substitution(6, 2, 3).is_err());
        assert_eq!(
            c1_block_substitution(7, 2, 5).unwrap().kind,
            DegenerationKind::C1Block { n: 7, m: 2, k: 5, regime: BlockRegime::Strict }
        );
    }

    #[test]
    fn custom_keeps_unmapped_entries() {
        let sub = Substitution::new().with(Var::x(1, 2), SparsePolynomial::zero()).unwrap();
        let spec = DegenerationSpec::custom(2, sub).unwrap();
        assert_eq!(spec.apply().unwrap(), parse_text("x_1_1 * x_2_2").unwrap());
    }
}
