use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unsupported base for multiplicity: {0}")]
    UnsupportedBase(String),
    #[error("unsupported numerator: {0}")]
    UnsupportedNumerator(String),
    #[error("incompatible classes: {0}")]
    Incompatible(String),
    #[error("generator at an unrecognized locus: {0}")]
    UnrecognizedLocus(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("{0}")]
    NotApplicable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}
