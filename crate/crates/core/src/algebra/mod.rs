//! Exact commutative algebra over the rationals: polynomials, localized
//! fractions, truncated ε-series, Gröbner bases and membership tests.

mod eps;
mod fraction;
mod groebner;
mod ideal;
mod monomial;
mod parse;
mod polynomial;

use thiserror::Error;

pub use eps::{eps_invert, EpsElement};
pub use fraction::LocalFraction;
pub use ideal::{groebner_basis, ideal_member, is_regular_sequence, local_ideal_member, IdealBasis, PrimePoint};
pub use monomial::Monomial;
pub use parse::{parse_fraction, parse_polynomial};
pub use polynomial::{Polynomial, Variables};

pub(crate) use ideal::{fmt_list, same_point};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("division by zero at byte {offset}")]
    DivisionByZero { offset: usize },
    #[error("`{0}` is not a polynomial (non-constant denominator)")]
    NotPolynomial(String),
    #[error("invalid fraction: {0}")]
    InvalidFraction(String),
    #[error("`{0}` is not a unit at the locus")]
    NonUnit(String),
    #[error("`{0}` does not vanish at the origin")]
    NotAtOrigin(String),
    #[error("not a regular sequence: {0}")]
    NotRegular(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("polynomials over different variable lists")]
    VariableMismatch,
}
