use std::fmt;

use rustc_hash::FxHashMap;

use super::Monomial;

const KIND_SHIFT: u32 = 24;
const ROW_SHIFT: u32 = 12;
const INDEX_MASK: u32 = (1 << ROW_SHIFT) - 1;

const KIND_MATRIX: u32 = 0;
const KIND_PERM: u32 = 1;
const KIND_PAD: u32 = 2;

/// A coordinate of the ambient space.
///
/// The packed id orders variables canonically: matrix entries `x_s_t`
/// row-major, then permanent entries `y_i_j` row-major, then the padding
/// variables `l`, `l1`, `l2`. A smaller id is a *larger* variable, so
/// `x_1_1 > x_1_2 > ... > x_n_n` as in the leading-monomial convention.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    /// Determinant coordinate `x^row_col` (1-based).
    Matrix { row: u32, col: u32 },
    /// Permanent coordinate `y^row_col` (1-based).
    Perm { row: u32, col: u32 },
    /// `l` (0), `l1` (1) or `l2` (2).
    Pad(u8),
}

impl Var {
    pub const ELL: Var = Var(KIND_PAD << KIND_SHIFT);
    pub const ELL1: Var = Var((KIND_PAD << KIND_SHIFT) | 1);
    pub const ELL2: Var = Var((KIND_PAD << KIND_SHIFT) | 2);

    /// Matrix entry `x^s_t`, 1-based.
    pub fn x(s: u32, t: u32) -> Var {
        assert!((1..=INDEX_MASK).contains(&s) && (1..=INDEX_MASK).contains(&t));
        Var((KIND_MATRIX << KIND_SHIFT) | (s << ROW_SHIFT) | t)
    }

    /// Permanent entry `y^i_j`, 1-based.
    pub fn y(i: u32, j: u32) -> Var {
        assert!((1..=INDEX_MASK).contains(&i) && (1..=INDEX_MASK).contains(&j));
        Var((KIND_PERM << KIND_SHIFT) | (i << ROW_SHIFT) | j)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn kind(self) -> VarKind {
        let row = (self.0 >> ROW_SHIFT) & INDEX_MASK;
        let col = self.0 & INDEX_MASK;
        match self.0 >> KIND_SHIFT {
            KIND_MATRIX => VarKind::Matrix { row, col },
            KIND_PERM => VarKind::Perm { row, col },
            _ => VarKind::Pad(col as u8),
        }
    }

    pub fn name(self) -> String {
        match self.kind() {
            VarKind::Matrix { row, col } => format!("x_{row}_{col}"),
            VarKind::Perm { row, col } => format!("y_{row}_{col}"),
            VarKind::Pad(0) => "l".to_string(),
            VarKind::Pad(i) => format!("l{i}"),
        }
    }

    /// Inverse of [`Var::name`].
    pub fn parse(name: &str) -> Option<Var> {
        match name {
            "l" => return Some(Var::ELL),
            "l1" => return Some(Var::ELL1),
            "l2" => return Some(Var::ELL2),
            _ => {}
        }
        let mut parts = name.split('_');
        let head = parts.next()?;
        let a: u32 = parts.next()?.parse().ok()?;
        let b: u32 = parts.next()?.parse().ok()?;
        if parts.next().is_some() || a == 0 || b == 0 || a > INDEX_MASK || b > INDEX_MASK {
            return None;
        }
        match head {
            "x" => Some(Var::x(a, b)),
            "y" => Some(Var::y(a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An ordered set of ambient coordinates with dense indices `0..N`.
#[derive(Clone, Debug, Default)]
pub struct VariableTable {
    vars: Vec<Var>,
    index: FxHashMap<Var, usize>,
}

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VariableTable {}

impl VariableTable {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut vars: Vec<Var> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        let index = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        VariableTable { vars, index }
    }

    /// The `n^2` entries of an `n x n` matrix.
    pub fn matrix(n: u32) -> Self {
        Self::new((1..=n).flat_map(|s| (1..=n).map(move |t| Var::x(s, t))))
    }

    /// The `m^2` entries of the permanent's matrix.
    pub fn permanent(m: u32) -> Self {
        Self::new((1..=m).flat_map(|i| (1..=m).map(move |j| Var::y(i, j))))
    }

    /// The `m^2 + 1` active coordinates of a padded permanent.
    pub fn padded(m: u32) -> Self {
        Self::new(Self::permanent(m).vars.into_iter().chain([Var::ELL]))
    }

    /// Extend with unused matrix coordinates (row-major) until the table has
    /// `total` variables. Used to embed a small active set into `C^{n^2}`.
    pub fn with_filler(self, total: usize) -> Self {
        if self.vars.len() >= total {
            return self;
        }
        let side = (total as f64).sqrt().ceil() as u32 + 1;
        let mut vars = self.vars.clone();
        'outer: for s in 1..=side + self.vars.len() as u32 {
            for t in 1..=side {
                if vars.len() >= total {
                    break 'outer;
                }
                let v = Var::x(s, t);
                if !self.index.contains_key(&v) {
                    vars.push(v);
                }
            }
        }
        Self::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.index.contains_key(&v)
    }

    /// Every monomial of total degree `d` in these variables.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut stack: Vec<(Var, u32)> = Vec::with_capacity(d as usize);
        fill_monomials(&self.vars, d, &mut stack, &mut out);
        out
    }
}

fn fill_monomials(vars: &[Var], remaining: u32, stack: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial::from_sorted_unchecked(stack.iter().copied()));
        return;
    }
    let Some((&first, rest)) = vars.split_first() else {
        return;
    };
    for e in (1..=remaining).rev() {
        stack.push((first, e));
        fill_monomials(rest, remaining - e, stack, out);
        stack.pop();
    }
    fill_monomials(rest, remaining, stack, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [Var::x(3, 12), Var::y(1, 2), Var::ELL, Var::ELL1, Var::ELL2] {
            assert_eq!(Var::parse(&v.name()), Some(v));
        }
        assert_eq!(Var::parse("x_0_1"), None);
        assert_eq!(Var::parse("z_1_1"), None);
        assert_eq!(Var::parse("x_1"), None);
    }

    #[test]
    fn canonical_order_is_row_major() {
        let n = 4;
        let table = VariableTable::matrix(n);
        let expected: Vec<Var> = (1..=n).flat_map(|s| (1..=n).map(move |t| Var::x(s, t))).collect();
        assert_eq!(table.vars(), expected.as_slice());
        assert!(Var::x(1, 4) < Var::x(2, 1));
        assert!(Var::x(4, 4) < Var::y(1, 1));
        assert!(Var::y(2, 2) < Var::ELL);
    }

    #[test]
    fn filler_reaches_requested_size() {
        let t = VariableTable::padded(2).with_filler(16);
        assert_eq!(t.len(), 16);
        assert!(t.contains(Var::ELL) && t.contains(Var::y(2, 2)));
        let t = VariableTable::new([Var::ELL1, Var::ELL2]).with_filler(25);
        assert_eq!(t.len(), 25);
    }

    #[test]
    fn monomial_counts_match_binomials() {
        let t = VariableTable::matrix(3);
        assert_eq!(t.monomials_of_degree(0).len(), 1);
        assert_eq!(t.monomials_of_degree(2).len(), 45);
        assert_eq!(t.monomials_of_degree(3).len(), 165);
    }
}
