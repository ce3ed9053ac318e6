//! Sparse row-echelon reduction over `Z` (fraction-free) and `F_p`.
//!
//! Rows are processed in order of increasing length. Each incoming row is
//! reduced against the existing pivot rows in pivot-creation order, which
//! terminates because a pivot row never contains an earlier pivot column.
//! A surviving row picks, among its free columns, the one with the smallest
//! column count (Markowitz-style fill-in heuristic).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::PrimeField;

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<E> = Vec<(u32, E)>;

pub trait EliminationDomain {
    type Elem: Clone;

    fn is_zero(&self, e: &Self::Elem) -> bool;

    /// Rescale a row that is about to become a pivot row.
    fn normalize_pivot(&self, row: &mut SparseRow<Self::Elem>, pivot_pos: usize);

    /// Cancel the entry of `target` at `target_pos` using `pivot`, whose
    /// entry in the same column sits at `pivot_pos`.
    fn eliminate(
        &self,
        target: &SparseRow<Self::Elem>,
        target_pos: usize,
        pivot: &SparseRow<Self::Elem>,
        pivot_pos: usize,
    ) -> SparseRow<Self::Elem>;
}

/// Fraction-free elimination over the integers; rank equals rank over `Q`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerDomain;

impl EliminationDomain for IntegerDomain {
    type Elem = BigInt;

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn normalize_pivot(&self, row: &mut SparseRow<BigInt>, pivot_pos: usize) {
        remove_content(row);
        if row[pivot_pos].1.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
    }

    fn eliminate(&self, target: &SparseRow<BigInt>, tp: usize, pivot: &SparseRow<BigInt>, pp: usize) -> SparseRow<BigInt> {
        let a = &pivot[pp].1;
        let b = &target[tp].1;
        let g = a.gcd(b);
        let fa = a / &g;
        let fb = -(b / &g);
        let mut out = merge(target, pivot, |x| x * &fa, |y| y * &fb, |x, y| x * &fa + y * &fb, |v| v.is_zero());
        remove_content(&mut out);
        out
    }
}

fn remove_content(row: &mut SparseRow<BigInt>) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

impl EliminationDomain for PrimeField {
    type Elem = u64;

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn normalize_pivot(&self, row: &mut SparseRow<u64>, pivot_pos: usize) {
        let inv = self.inv(row[pivot_pos].1);
        for (_, v) in row.iter_mut() {
            *v = self.mul(*v, inv);
        }
    }

    fn eliminate(&self, target: &SparseRow<u64>, tp: usize, pivot: &SparseRow<u64>, pp: usize) -> SparseRow<u64> {
        debug_assert_eq!(pivot[pp].1, 1);
        let f = self.neg(target[tp].1);
        merge(target, pivot, |&x| x, |&y| self.mul(y, f), |&x, &y| self.add(x, self.mul(y, f)), |&v| v == 0)
    }
}

fn merge<E>(
    a: &SparseRow<E>,
    b: &SparseRow<E>,
    only_a: impl Fn(&E) -> E,
    only_b: impl Fn(&E) -> E,
    both: impl Fn(&E, &E) -> E,
    is_zero: impl Fn(&E) -> bool,
) -> SparseRow<E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        let (col, v) = match ord {
            Ordering::Less => {
                i += 1;
                (a[i - 1].0, only_a(&a[i - 1].1))
            }
            Ordering::Greater => {
                j += 1;
                (b[j - 1].0, only_b(&b[j - 1].1))
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (a[i - 1].0, both(&a[i - 1].1, &b[j - 1].1))
            }
        };
        if !is_zero(&v) {
            out.push((col, v));
        }
    }
    out
}

/// Result of a row-echelon reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    /// Indices (into the input) of rows that became pivots; they form a basis
    /// of the row space.
    pub independent_rows: Vec<usize>,
    pub pivot_columns: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

pub fn row_echelon<D: EliminationDomain>(domain: &D, mut rows: Vec<SparseRow<D::Elem>>, ncols: usize) -> Echelon {
    let mut col_count = vec![0u32; ncols];
    for row in &rows {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        for &(c, _) in row {
            col_count[c as usize] += 1;
        }
    }
    let mut order: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    order.sort_by_key(|&i| rows[i].len());

    let mut pivot_of_col = vec![NO_PIVOT; ncols];
    let mut pivot_rows: Vec<SparseRow<D::Elem>> = Vec::new();
    let mut pivot_cols: Vec<u32> = Vec::new();
    let mut independent = Vec::new();

    for idx in order {
        let mut row = std::mem::take(&mut rows[idx]);
        loop {
            // earliest pivot whose column is present in the row
            let hit = row
                .iter()
                .enumerate()
                .filter_map(|(pos, &(c, _))| {
                    let p = pivot_of_col[c as usize];
                    (p != NO_PIVOT).then_some((p, pos))
                })
                .min();
            let Some((p, pos)) = hit else { break };
            let prow = &pivot_rows[p as usize];
            let pc = pivot_cols[p as usize];
            let ppos = prow.binary_search_by_key(&pc, |&(c, _)| c).expect("pivot entry present");
            row = domain.eliminate(&row, pos, prow, ppos);
            if row.is_empty() {
                break;
            }
        }
        if row.is_empty() {
            continue;
        }
        let (pos, &(col, _)) = row
            .iter()
            .enumerate()
            .min_by_key(|(_, &(c, _))| (col_count[c as usize], c))
            .expect("nonempty row");
        domain.normalize_pivot(&mut row, pos);
        pivot_of_col[col as usize] = pivot_rows.len() as u32;
        pivot_cols.push(col);
        pivot_rows.push(row);
        independent.push(idx);
    }
    independent.sort_unstable();
    Echelon { rank: pivot_rows.len(), independent_rows: independent, pivot_columns: pivot_cols }
}
