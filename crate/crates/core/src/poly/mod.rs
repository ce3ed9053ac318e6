//! Exact sparse polynomials and the determinant/permanent families.

mod families;
pub mod format;
mod monomial;
mod polynomial;
mod substitution;
mod var;

pub use families::{make_determinant, make_padded_permanent, make_permanent, minor, minor_with};
pub use monomial::Monomial;
pub use polynomial::SparsePolynomial;
pub use substitution::Substitution;
pub use var::{Var, VarKind, VariableTable};

/// Exact coefficient type. Prime-field arithmetic lives in [`crate::field`].
pub type Rational = num_rational::BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("empty instance: {0}")]
    EmptyInstance(&'static str),
    #[error("padding needs n > m (got m = {m}, n = {n})")]
    InvalidPadding { m: u32, n: u32 },
    #[error("variable {0} has no image under the substitution")]
    UnmappedVariable(String),
    #[error("image of {var} has degree {degree}; substitutions must be linear")]
    NonLinearImage { var: String, degree: u32 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
