//! Brute-force reference implementations used to cross-check the engine.
//!
//! Everything here is single-threaded, dense and deliberately naive. Size
//! guardrails are hard errors so that results are always exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::binomial::binom_u64;
use crate::poly::{Monomial, Rational, SparsePolynomial, Var, VariableTable};

pub const MAX_DENSE_COLUMNS: usize = 10_000;
pub const MAX_MINOR_SIDE: u32 = 7;
pub const MAX_ENUMERATED_MONOMIALS: u64 = 10_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("dense oracle refuses {columns} columns (limit {limit})")]
    TooManyColumns { columns: usize, limit: usize },
    #[error("minor enumeration is limited to n <= {MAX_MINOR_SIDE} (got {0})")]
    MatrixTooLarge(u32),
    #[error("enumeration of {count} monomials exceeds the limit of {limit}")]
    TooManyMonomials { count: String, limit: u64 },
    #[error("need 0 <= k < n (got n = {n}, k = {k})")]
    BadOrder { n: u32, k: u32 },
    #[error("leading monomial of minor rows {rows:?} cols {cols:?} is {found}, not its diagonal")]
    LeadingNotDiagonal { rows: Vec<u32>, cols: Vec<u32>, found: String },
    #[error("monomial {0} is not over the given variables")]
    ForeignVariable(String),
}

// ---------------------------------------------------------------------------
// dense rank

trait DenseEntry: Clone + PartialEq {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    /// `a * x - b * y`, `None` on overflow.
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl DenseEntry for i64 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn combine(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, o: &i64) -> i64 {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, g: &i64) -> i64 {
        self / g
    }
    fn is_unit(&self) -> bool {
        *self == 1
    }
}

impl DenseEntry for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn combine(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }
    fn gcd(&self, o: &BigInt) -> BigInt {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, g: &BigInt) -> BigInt {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.is_one()
    }
}

/// Incremental fraction-free row reduction with leftmost pivots.
fn dense_rank<E: DenseEntry>(rows: &[Vec<E>]) -> Option<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row: Vec<Option<usize>> = vec![None; ncols];
    let mut basis: Vec<Vec<E>> = Vec::new();
    for input in rows {
        let mut row = input.clone();
        let mut col = 0;
        while col < ncols {
            if row[col].is_nil() {
                col += 1;
                continue;
            }
            match pivot_row[col] {
                None => {
                    pivot_row[col] = Some(basis.len());
                    basis.push(row);
                    break;
                }
                Some(b) => {
                    let p = &basis[b];
                    let (pv, rv) = (p[col].clone(), row[col].clone());
                    for j in col..ncols {
                        if !p[j].is_nil() || !row[j].is_nil() {
                            row[j] = E::combine(&pv, &row[j], &rv, &p[j])?;
                        }
                    }
                    let mut g = E::nil();
                    for v in &row[col..] {
                        if !v.is_nil() {
                            g = g.gcd(v);
                            if g.is_unit() {
                                break;
                            }
                        }
                    }
                    if !g.is_nil() && !g.is_unit() {
                        for v in row[col..].iter_mut() {
                            *v = v.div_exact(&g);
                        }
                    }
                    col += 1;
                }
            }
        }
    }
    Some(basis.len())
}

/// Rank over `Q` of the coefficient matrix of `rows`, by dense elimination.
pub fn brute_rank(rows: &[SparsePolynomial]) -> Result<usize, OracleError> {
    let columns: BTreeSet<&Monomial> = rows.iter().flat_map(|r| r.terms().map(|(m, _)| m)).collect();
    if columns.len() > MAX_DENSE_COLUMNS {
        return Err(OracleError::TooManyColumns { columns: columns.len(), limit: MAX_DENSE_COLUMNS });
    }
    let columns: Vec<&Monomial> = columns.into_iter().rev().collect();
    let integer_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let lcm = r.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            columns
                .iter()
                .map(|m| r.coefficient(m).map_or_else(BigInt::zero, |c| c.numer() * (&lcm / c.denom())))
                .collect()
        })
        .collect();
    let small: Option<Vec<Vec<i64>>> = integer_rows
        .iter()
        .map(|r| r.iter().map(|v| i64::try_from(v).ok().filter(|x| x.abs() < 1 << 31)).collect())
        .collect();
    if let Some(rank) = small.and_then(|s| dense_rank::<i64>(&s)) {
        return Ok(rank);
    }
    Ok(dense_rank(&integer_rows).expect("big integers do not overflow"))
}

/// Determinant of a rational matrix by Bareiss elimination.
pub fn bareiss_determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    // clear denominators row by row
    let mut scale = Rational::one();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale /= Rational::from_integer(lcm.clone());
            row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::from_integer(sign * &a[n - 1][n - 1]) * scale
}

// ---------------------------------------------------------------------------
// leading monomials of minors

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
}

impl MonomialSet {
    pub fn new(degree: u32, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let set: BTreeSet<Monomial> = monomials.into_iter().collect();
        debug_assert!(set.iter().all(|m| m.degree() == degree));
        MonomialSet { degree, monomials: set.into_iter().rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Minor by Laplace expansion along the first row.
fn laplace_minor(rows: &[u32], cols: &[u32]) -> SparsePolynomial {
    if rows.is_empty() {
        return SparsePolynomial::one();
    }
    let mut total = SparsePolynomial::zero();
    for (j, &c) in cols.iter().enumerate() {
        let rest: Vec<u32> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = laplace_minor(&rows[1..], &rest).mul_monomial(&Monomial::var(Var::x(rows[0], c)));
        total = if j % 2 == 0 { &total + &sub } else { &total - &sub };
    }
    total
}

fn subsets(n: u32, size: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, size: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

fn on_diagonal_band(v: Var) -> bool {
    match v.kind() {
        crate::poly::VarKind::Matrix { row, col } => col == row || col == row + 1,
        _ => false,
    }
}

/// Distinct leading monomials of the `(n-k)`-minors of the generic `n x n`
/// matrix that only use diagonal and superdiagonal entries.
pub fn leading_monomials_of_minors(n: u32, k: u32) -> Result<MonomialSet, OracleError> {
    if n > MAX_MINOR_SIDE {
        return Err(OracleError::MatrixTooLarge(n));
    }
    if k >= n {
        return Err(OracleError::BadOrder { n, k });
    }
    let size = n - k;
    let index_sets = subsets(n, size);
    let mut found = Vec::new();
    for rows in &index_sets {
        for cols in &index_sets {
            let minor = laplace_minor(rows, cols);
            let lead = minor.terms().map(|(m, _)| m).max().expect("minors are nonzero").clone();
            let diagonal = Monomial::from_pairs(rows.iter().zip(cols).map(|(&r, &c)| (Var::x(r, c), 1)));
            if lead != diagonal {
                return Err(OracleError::LeadingNotDiagonal { rows: rows.clone(), cols: cols.clone(), found: lead.to_string() });
            }
            if lead.variables().all(on_diagonal_band) {
                found.push(lead);
            }
        }
    }
    Ok(MonomialSet::new(size, found))
}

/// Number of degree `d + tau` monomials over `vars` divisible by a member of `l`.
pub fn monomial_ideal_component(l: &MonomialSet, tau: u32, vars: &VariableTable) -> Result<u64, OracleError> {
    for m in &l.monomials {
        if let Some(v) = m.variables().find(|v| !vars.contains(*v)) {
            return Err(OracleError::ForeignVariable(v.name()));
        }
    }
    if l.is_empty() {
        return Ok(0);
    }
    let e = l.degree + tau;
    let count = binom_u64(vars.len() as u64 + e as u64 - 1, e as u64);
    if count > MAX_ENUMERATED_MONOMIALS.into() {
        return Err(OracleError::TooManyMonomials { count: count.to_string(), limit: MAX_ENUMERATED_MONOMIALS });
    }
    Ok(vars.monomials_of_degree(e).iter().filter(|m| l.monomials.iter().any(|g| g.divides(m))).count() as u64)
}

// ---------------------------------------------------------------------------
// exhaustive Macaulay representations

/// Every representation `q = sum_{i=delta}^{d} binom(a_i, i)` with
/// `a_d > ... > a_delta >= delta >= 1`, found by exhaustive search.
pub fn all_macaulay_representations(q: u64, d: u32) -> Vec<Vec<(u64, u32)>> {
    fn b(a: u64, i: u32) -> u64 {
        if i as u64 > a {
            return 0;
        }
        let mut acc: u128 = 1;
        for j in 1..=i as u128 {
            acc = acc * (a as u128 - i as u128 + j) / j;
            if acc > u64::MAX as u128 {
                return u64::MAX;
            }
        }
        acc as u64
    }
    // largest sum reachable from level i with tops below `bound`
    fn reach(bound: u64, i: u32) -> u64 {
        (1..=i).map(|j| bound.checked_sub(1 + (i - j) as u64).map_or(0, |a| b(a, j))).fold(0u64, u64::saturating_add)
    }
    fn go(rest: u64, i: u32, bound: u64, cur: &mut Vec<(u64, u32)>, out: &mut Vec<Vec<(u64, u32)>>) {
        if rest == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if i == 0 || reach(bound, i) < rest {
            return;
        }
        if i == 1 {
            if rest < bound {
                cur.push((rest, 1));
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for a in i as u64..bound {
            let v = b(a, i);
            if v > rest {
                break;
            }
            cur.push((a, i));
            go(rest - v, i - 1, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q == 0 {
        out.push(Vec::new());
        return out;
    }
    go(q, d, q + d as u64 + 1, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{make_determinant, minor};

    #[test]
    fn brute_rank_basics() {
        assert_eq!(brute_rank(&[]).unwrap(), 0);
        let p = make_determinant(2).unwrap();
        assert_eq!(brute_rank(&[p.clone(), p.clone(), p.scale(&Rational::new(3.into(), 7.into()))]).unwrap(), 1);
        let minors: Vec<_> = subsets(3, 2)
            .iter()
            .flat_map(|r| subsets(3, 2).into_iter().map(move |c| minor(r, &c)))
            .collect();
        assert_eq!(brute_rank(&minors).unwrap(), 9);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = Rational::from_integer(BigInt::from(1u64 << 40));
        let rows = vec![
            &SparsePolynomial::term(Monomial::var(Var::ELL), big.clone()) + &SparsePolynomial::var(Var::ELL1),
            &SparsePolynomial::var(Var::ELL) + &SparsePolynomial::term(Monomial::var(Var::ELL1), big),
        ];
        assert_eq!(brute_rank(&rows).unwrap(), 2);
    }

    #[test]
    fn laplace_agrees_with_permutation_expansion() {
        for n in 1..=5 {
            let idx: Vec<u32> = (1..=n).collect();
            assert_eq!(laplace_minor(&idx, &idx), make_determinant(n).unwrap());
        }
    }

    #[test]
    fn leading_monomial_examples() {
        let l = leading_monomials_of_minors(2, 1).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(leading_monomials_of_minors(3, 1).unwrap().len(), 6);
        assert_eq!(leading_monomials_of_minors(4, 0).unwrap().len(), 1);
        assert!(leading_monomials_of_minors(8, 1).is_err());
    }

    #[test]
    fn ideal_component_examples() {
        let vars = VariableTable::matrix(3);
        let single = MonomialSet::new(2, [Monomial::from_pairs([(Var::x(1, 1), 1), (Var::x(2, 2), 1)])]);
        assert_eq!(monomial_ideal_component(&single, 2, &vars).unwrap(), 45);
        assert_eq!(monomial_ideal_component(&MonomialSet::new(2, []), 2, &vars).unwrap(), 0);
        let lead = leading_monomials_of_minors(3, 1).unwrap();
        // 6 generators times 9 variables, minus coincident products
        assert_eq!(monomial_ideal_component(&lead, 1, &vars).unwrap(), 46);
    }

    #[test]
    fn bareiss_small() {
        let r = |v: i64| Rational::from_integer(v.into());
        let m = vec![vec![r(2), r(0), r(1)], vec![r(1), r(3), r(2)], vec![r(1), r(1), r(2)]];
        assert_eq!(bareiss_determinant(&m), r(6));
        let zero_pivot = vec![vec![r(0), r(1)], vec![r(1), r(0)]];
        assert_eq!(bareiss_determinant(&zero_pivot), r(-1));
    }

    #[test]
    fn exhaustive_representations() {
        assert_eq!(all_macaulay_representations(9, 3), vec![vec![(4, 3), (3, 2), (2, 1)]]);
        assert_eq!(all_macaulay_representations(10, 3), vec![vec![(5, 3)]]);
        assert_eq!(all_macaulay_representations(0, 3).len(), 1);
    }
}
