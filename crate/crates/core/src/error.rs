use thiserror::Error;

use crate::dsl::ParseError;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ambient dimension must be positive")]
    ZeroDimension,

    #[error("form is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("bidegree mismatch: ({0},{1}) vs ({2},{3})")]
    BidegreeMismatch(usize, usize, usize, usize),

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NonSquare { rows: usize, row: usize, len: usize },

    #[error("matrix is not Hermitian; offending entries: {0}")]
    NotHermitian(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not orthogonal (A^T A != I); offending entries: {0}")]
    NotOrthogonal(String),

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("coefficient depends on {variable}, which is not allowed here")]
    NotHolomorphic { variable: String },

    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("invalid input file: {0}")]
    InvalidFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
