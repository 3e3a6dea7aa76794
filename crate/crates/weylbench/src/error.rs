//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable context mismatch: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("exact division failed: {0}")]
    NonExactDivision(String),
    #[error("negative power of a non-monomial: {0}")]
    NonUnitInverse(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("nonzero constant term in formal substitution")]
    ConstantTerm,
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("graph too small: {0}")]
    GraphTooSmall(String),
    #[error("support meets truncation boundary at vertex {0}")]
    TruncationBoundary(String),
    #[error("edge generator not solvable for a coordinate: {0}")]
    UnsolvableGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}
