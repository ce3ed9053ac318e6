use num_traits::One;

use super::{Monomial, PolyError, Rational, SparsePolynomial, Var};

/// Calls `f(perm, is_even)` for every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], bool)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut even = true;
    f(&perm, even);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            even = !even;
            f(&perm, even);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Determinant of the submatrix of `(entry(r, c))` on the given rows and
/// columns, where `entry` names the variable at (1-based) position.
pub fn minor_with(rows: &[u32], cols: &[u32], entry: impl Fn(u32, u32) -> Var) -> SparsePolynomial {
    assert_eq!(rows.len(), cols.len());
    let mut terms = Vec::new();
    for_each_permutation(rows.len(), |perm, even| {
        let m = Monomial::from_pairs(rows.iter().zip(perm).map(|(&r, &j)| (entry(r, cols[j]), 1)));
        let c = if even { Rational::one() } else { -Rational::one() };
        terms.push((m, c));
    });
    SparsePolynomial::from_terms(terms)
}

/// The minor of the generic `x` matrix on the given (1-based) rows and columns.
pub fn minor(rows: &[u32], cols: &[u32]) -> SparsePolynomial {
    minor_with(rows, cols, Var::x)
}

/// `det_n = sum_sigma sgn(sigma) x^1_sigma(1) ... x^n_sigma(n)`.
pub fn make_determinant(n: u32) -> Result<SparsePolynomial, PolyError> {
    if n == 0 {
        return Err(PolyError::EmptyInstance("determinant of a 0x0 matrix"));
    }
    let idx: Vec<u32> = (1..=n).collect();
    Ok(minor(&idx, &idx))
}

/// `perm_m = sum_sigma y^1_sigma(1) ... y^m_sigma(m)`.
pub fn make_permanent(m: u32) -> Result<SparsePolynomial, PolyError> {
    if m == 0 {
        return Err(PolyError::EmptyInstance("permanent of a 0x0 matrix"));
    }
    let mut terms = Vec::new();
    for_each_permutation(m as usize, |perm, _| {
        let mono = Monomial::from_pairs(perm.iter().enumerate().map(|(i, &j)| (Var::y(i as u32 + 1, j as u32 + 1), 1)));
        terms.push((mono, Rational::one()));
    });
    Ok(SparsePolynomial::from_terms(terms))
}

/// The padded permanent `l^(n-m) perm_m`.
pub fn make_padded_permanent(m: u32, n: u32) -> Result<SparsePolynomial, PolyError> {
    if n <= m {
        return Err(PolyError::InvalidPadding { m, n });
    }
    let perm = make_permanent(m)?;
    Ok(perm.mul_monomial(&Monomial::pow(Var::ELL, n - m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn x(s: u32, t: u32) -> SparsePolynomial {
        SparsePolynomial::var(Var::x(s, t))
    }

    #[test]
    fn heap_visits_every_permutation_once_with_sign() {
        let mut seen = std::collections::HashSet::new();
        let mut even_count = 0;
        for_each_permutation(4, |p, even| {
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(inversions % 2 == 0, even);
            seen.insert(p.to_vec());
            even_count += even as usize;
        });
        assert_eq!(seen.len(), 24);
        assert_eq!(even_count, 12);
    }

    #[test]
    fn small_determinants() {
        assert_eq!(make_determinant(1).unwrap(), x(1, 1));
        let det2 = &(&x(1, 1) * &x(2, 2)) - &(&x(1, 2) * &x(2, 1));
        assert_eq!(make_determinant(2).unwrap(), det2);
        let det3 = make_determinant(3).unwrap();
        assert_eq!(det3.num_terms(), 6);
        assert_eq!(det3.degree(), Some(3));
        assert!(make_determinant(0).is_err());
    }

    #[test]
    fn det3_at_identity_is_one() {
        let det3 = make_determinant(3).unwrap();
        let one = det3.evaluate(|v| match v.kind() {
            crate::poly::VarKind::Matrix { row, col } if row == col => Rational::one(),
            _ => Rational::zero(),
        });
        assert_eq!(one, Rational::one());
    }

    #[test]
    fn permanents() {
        let p1 = make_permanent(1).unwrap();
        assert_eq!(p1, SparsePolynomial::var(Var::y(1, 1)));
        let p2 = make_permanent(2).unwrap();
        let y = |i, j| SparsePolynomial::var(Var::y(i, j));
        assert_eq!(p2, &(&y(1, 1) * &y(2, 2)) + &(&y(1, 2) * &y(2, 1)));
        let p3 = make_permanent(3).unwrap();
        assert_eq!(p3.num_terms(), 6);
        assert!(p3.terms().all(|(_, c)| c.is_one()));
        assert!(make_permanent(0).is_err());
    }

    #[test]
    fn padded_permanents() {
        let l = SparsePolynomial::var(Var::ELL);
        assert_eq!(make_padded_permanent(2, 3).unwrap(), &l * &make_permanent(2).unwrap());
        let p = make_padded_permanent(2, 5).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.degree(), Some(5));
        assert!(p.terms().all(|(m, _)| m.exponent(Var::ELL) == 3));
        let p = make_padded_permanent(3, 4).unwrap();
        assert_eq!(p.num_terms(), 6);
        assert_eq!(p.degree(), Some(4));
        assert!(matches!(make_padded_permanent(3, 3), Err(PolyError::InvalidPadding { .. })));
    }
}
