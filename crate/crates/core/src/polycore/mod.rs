//! Exact sparse multivariate polynomials, monomial orders and gradings.

mod monomial;
mod order;
mod parse;
mod polynomial;

use thiserror::Error;

pub use monomial::Exponent;
pub use order::{compare_monomials, Convention, TermOrder};
pub use parse::parse_polynomial;
pub use polynomial::{
    format_polynomial, initial_form, initial_form_matrix, integer, poly_arith, rational, ArithOp, Coeff, Grading,
    Polynomial, Term, VarList,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live over different variable lists")]
    VariableMismatch,
    #[error("initial form of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("grading weights must be positive")]
    NonPositiveGrading,
    #[error("malformed term order")]
    InvalidOrder,
}
