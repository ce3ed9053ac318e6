//! Exact engine for shifted partial derivatives of determinant and
//! permanent families.

pub mod binomial;
pub mod bounds;
pub mod cases;
pub mod degenerations;
pub mod field;
pub mod flatten;
pub mod linalg;
pub mod macaulay;
pub mod oracle;
pub mod poly;
#[cfg(test)]
mod properties;
pub mod smallscale;

pub use bounds::{ArithmeticMode, BigQuantity, Provenance};
pub use cases::{CaseId, CaseReport, Instance, SweepReport, Verdict};
pub use flatten::{FlattenConfig, GradedComponentBasis, RankMode};
pub use macaulay::MacaulayRep;
pub use poly::{Monomial, Rational, SparsePolynomial, Substitution, Var, VariableTable};
