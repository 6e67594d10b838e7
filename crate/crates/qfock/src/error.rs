use thiserror::Error;

/// Errors produced by the exact kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated a precondition (zero q or p, bad bound, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The parameters (q, p) turned out to be non-generic for the requested
    /// computation: an eigenvalue collision or a singular exact solve.
    #[error("parameter degeneracy: {0}")]
    Degeneracy(String),

    /// Two operands live over different variable counts or color ranges.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A site or variable index was outside 1..=N (or a color outside 1..=n).
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// An exact division failed. This signals an arithmetic bug upstream,
    /// never a property of valid input.
    #[error("exact division failed: {0}")]
    ExactDivision(String),

    /// A vector mixed several homogeneous degrees where a single one is required.
    #[error("mixed degree: {0}")]
    MixedDegree(String),

    /// A string or JSON value could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
