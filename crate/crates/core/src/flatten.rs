//! Ranks of the partial-derivative map `P_{k,n-k}` and the shifted map
//! `P_{(k,n-k)[tau]}`, i.e. dimensions of graded components of the k-th
//! Jacobian ideal of `P`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::binomial::binom_u64;
use crate::field::{FieldError, PrimeField};
use crate::linalg::{row_echelon, IntegerDomain, SparseRow};
use crate::poly::{Monomial, Rational, SparsePolynomial, VariableTable};

/// Default cap on the number of nonzero matrix entries an operation may generate.
pub const DEFAULT_ENTRY_BUDGET: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum RankMode {
    /// Fraction-free elimination over the integers (rank over `Q`).
    Exact,
    /// Elimination modulo a prime `p > 2^60`. Never exceeds the exact rank.
    PrimeField { prime: u64 },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FlattenError {
    #[error("instance would generate {entries} matrix entries, over the budget of {budget}")]
    BudgetExceeded { entries: u128, budget: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("variable {0} is not part of the ambient variable table")]
    VariableOutsideAmbient(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug)]
pub struct FlattenConfig {
    pub mode: RankMode,
    pub budget: usize,
}

impl Default for FlattenConfig {
    fn default() -> Self {
        FlattenConfig { mode: RankMode::Exact, budget: DEFAULT_ENTRY_BUDGET }
    }
}

impl FlattenConfig {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p)?;
        Ok(FlattenConfig { mode: RankMode::PrimeField { prime: p }, ..Self::default() })
    }

    pub fn random_prime(rng: &mut impl rand::Rng) -> Self {
        let p = PrimeField::random(rng).modulus();
        FlattenConfig { mode: RankMode::PrimeField { prime: p }, ..Self::default() }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

/// Derivative order `k` and shift degree `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftParams {
    pub k: u32,
    pub tau: u32,
}

impl ShiftParams {
    /// `t = tau + n - k`, the degree of the shifted component.
    pub fn t(&self, n: u32) -> Option<u32> {
        n.checked_sub(self.k).map(|d| d + self.tau)
    }
}

/// A spanning set for one graded component of a Jacobian ideal, with its rank.
#[derive(Clone, Debug)]
pub struct GradedComponentBasis {
    degree: u32,
    rows: Vec<SparsePolynomial>,
    columns: Vec<Monomial>,
    rank: usize,
    mode: RankMode,
    independent: Vec<usize>,
    beyond_degree: bool,
}

impl GradedComponentBasis {
    fn empty(degree: u32, mode: RankMode, beyond_degree: bool) -> Self {
        GradedComponentBasis { degree, rows: vec![], columns: vec![], rank: 0, mode, independent: vec![], beyond_degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rows(&self) -> &[SparsePolynomial] {
        &self.rows
    }

    /// Column monomials in descending graded-lex order.
    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> RankMode {
        self.mode
    }

    /// `true` when the derivative order exceeded the degree (zero space).
    pub fn beyond_degree(&self) -> bool {
        self.beyond_degree
    }

    /// Rows that form a basis of the span.
    pub fn basis(&self) -> impl Iterator<Item = &SparsePolynomial> {
        self.independent.iter().map(|&i| &self.rows[i])
    }

    /// Sparse coefficient matrix: rows are generators, columns index [`Self::columns`].
    pub fn matrix(&self) -> Vec<SparseRow<Rational>> {
        let index = column_index(&self.columns);
        self.rows.iter().map(|r| sparse_row(r, &index, |c| c.clone())).collect()
    }
}

fn column_index(columns: &[Monomial]) -> FxHashMap<&Monomial, u32> {
    columns.iter().enumerate().map(|(i, m)| (m, i as u32)).collect()
}

fn sparse_row<E>(p: &SparsePolynomial, index: &FxHashMap<&Monomial, u32>, conv: impl Fn(&Rational) -> E) -> SparseRow<E> {
    let mut row: SparseRow<E> = p.terms().map(|(m, c)| (index[m], conv(c))).collect();
    row.sort_unstable_by_key(|&(c, _)| c);
    row
}

/// Descending graded-lex list of every monomial occurring in `rows`.
fn collect_columns(rows: &[SparsePolynomial]) -> Vec<Monomial> {
    let set: FxHashSet<&Monomial> = rows.iter().flat_map(|r| r.terms().map(|(m, _)| m)).collect();
    let mut cols: Vec<Monomial> = set.into_iter().cloned().collect();
    cols.par_sort_unstable_by(|a, b| b.cmp(a));
    cols
}

fn integer_row(p: &SparsePolynomial, index: &FxHashMap<&Monomial, u32>) -> SparseRow<BigInt> {
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    sparse_row(p, index, |c| c.numer() * (&lcm / c.denom()))
}

/// Rank of the span of `rows` together with a basis subset and the column list.
pub fn rank_rows(rows: &[SparsePolynomial], mode: RankMode) -> Result<(usize, Vec<usize>, Vec<Monomial>), FlattenError> {
    let columns = collect_columns(rows);
    let index = column_index(&columns);
    let ncols = columns.len();
    let echelon = match mode {
        RankMode::Exact => {
            let converted: Vec<_> = rows.par_iter().map(|r| integer_row(r, &index)).collect();
            let (unique, origin) = dedupe(converted);
            let mut e = row_echelon(&IntegerDomain, unique, ncols);
            e.independent_rows.iter_mut().for_each(|i| *i = origin[*i]);
            e
        }
        RankMode::PrimeField { prime } => {
            let f = PrimeField::new(prime)?;
            let converted: Result<Vec<_>, FieldError> = rows
                .par_iter()
                .map(|r| {
                    let mut row = Vec::with_capacity(r.num_terms());
                    for (m, c) in r.terms() {
                        let v = f.from_rational(c)?;
                        if v != 0 {
                            row.push((index[m], v));
                        }
                    }
                    row.sort_unstable_by_key(|&(c, _)| c);
                    Ok(row)
                })
                .collect();
            let (unique, origin) = dedupe(converted?);
            let mut e = row_echelon(&f, unique, ncols);
            e.independent_rows.iter_mut().for_each(|i| *i = origin[*i]);
            e
        }
    };
    let mut independent = echelon.independent_rows;
    independent.sort_unstable();
    Ok((echelon.rank, independent, columns))
}

fn dedupe<E: std::hash::Hash + Eq + Clone>(rows: Vec<SparseRow<E>>) -> (Vec<SparseRow<E>>, Vec<usize>) {
    let mut seen: FxHashSet<SparseRow<E>> = FxHashSet::default();
    let mut unique = Vec::new();
    let mut origin = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        if !r.is_empty() && seen.insert(r.clone()) {
            unique.push(r);
            origin.push(i);
        }
    }
    (unique, origin)
}

/// Recomputes the rank of a basis' matrix view in another mode.
pub fn rank(basis: &GradedComponentBasis, mode: RankMode) -> Result<usize, FlattenError> {
    Ok(rank_rows(&basis.rows, mode)?.0)
}

/// Span of all order-`k` partial derivatives of `p`; its rank is `rank(P_{k,n-k})`.
///
/// Only differential monomials dividing some term of `p` are generated; all
/// others annihilate `p`.
pub fn partial_space(p: &SparsePolynomial, k: u32, cfg: &FlattenConfig) -> Result<GradedComponentBasis, FlattenError> {
    if p.is_zero() {
        return Ok(GradedComponentBasis::empty(0, cfg.mode, false));
    }
    let n = p.degree().ok_or(FlattenError::NotHomogeneous)?;
    if k > n {
        return Ok(GradedComponentBasis::empty(0, cfg.mode, true));
    }
    let mut ops: Vec<Monomial> = p
        .terms()
        .flat_map(|(m, _)| m.divisors_of_degree(k))
        .collect::<FxHashSet<_>>()
        .into_iter()
        .collect();
    ops.sort_unstable_by(|a, b| b.cmp(a));
    let estimate = ops.len() as u128 * p.num_terms() as u128;
    if estimate > cfg.budget as u128 {
        // the estimate is loose; count exactly before refusing
        let exact: u128 = ops.par_iter().map(|d| p.differentiate(d).num_terms() as u128).sum();
        if exact > cfg.budget as u128 {
            return Err(FlattenError::BudgetExceeded { entries: exact, budget: cfg.budget });
        }
    }
    let rows: Vec<SparsePolynomial> = ops.par_iter().map(|d| p.differentiate(d)).filter(|r| !r.is_zero()).collect();
    build(n - k, rows, cfg.mode)
}

fn build(degree: u32, rows: Vec<SparsePolynomial>, mode: RankMode) -> Result<GradedComponentBasis, FlattenError> {
    let (rank, independent, columns) = rank_rows(&rows, mode)?;
    Ok(GradedComponentBasis { degree, rows, columns, rank, mode, independent, beyond_degree: false })
}

/// Degree `n - k + tau` component of the k-th Jacobian ideal of `p`, shifting
/// by every degree-`tau` monomial of `ambient`.
pub fn shifted_space(
    p: &SparsePolynomial,
    k: u32,
    tau: u32,
    ambient: &VariableTable,
    cfg: &FlattenConfig,
) -> Result<GradedComponentBasis, FlattenError> {
    let partials = partial_space(p, k, cfg)?;
    shift_basis(&partials, tau, ambient, cfg)
}

/// Multiplies a basis of a component by all degree-`tau` monomials of `ambient`.
pub fn shift_basis(
    partials: &GradedComponentBasis,
    tau: u32,
    ambient: &VariableTable,
    cfg: &FlattenConfig,
) -> Result<GradedComponentBasis, FlattenError> {
    if partials.rank == 0 {
        return Ok(GradedComponentBasis::empty(partials.degree + tau, cfg.mode, partials.beyond_degree));
    }
    for r in partials.basis() {
        if let Some(v) = r.variables().into_iter().find(|v| !ambient.contains(*v)) {
            return Err(FlattenError::VariableOutsideAmbient(v.name()));
        }
    }
    let shifts = binom_u64(ambient.len() as u64 + tau as u64 - 1, tau as u64).to_u128().unwrap_or(u128::MAX);
    let per_shift: u128 = partials.basis().map(|r| r.num_terms() as u128).sum();
    let entries = per_shift.saturating_mul(shifts);
    if entries > cfg.budget as u128 {
        return Err(FlattenError::BudgetExceeded { entries, budget: cfg.budget });
    }
    let monomials = ambient.monomials_of_degree(tau);
    let basis: Vec<&SparsePolynomial> = partials.basis().collect();
    let rows: Vec<SparsePolynomial> =
        basis.par_iter().flat_map_iter(|b| monomials.iter().map(move |m| b.mul_monomial(m))).collect();
    build(partials.degree + tau, rows, cfg.mode)
}
