use thiserror::Error;

/// Errors raised by constructions, solvers, and document parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected n = {expected}, got n = {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("the zero polynomial has no pure high degree")]
    ZeroPolynomial,

    #[error("n = {n} exceeds the brute-force limit {limit}")]
    BruteForceLimit { n: usize, limit: usize },

    #[error("malformed LP: {0}")]
    MalformedLp(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
