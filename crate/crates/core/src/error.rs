use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("{0} is not a prime in [2, 2^31)")]
    InvalidPrime(u64),

    #[error("unknown field `{0}` (expected `Q` or `GF:<p>`)")]
    UnknownField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid subset {subset:?} for n={n}, r={r}")]
    InvalidSubset {
        n: usize,
        r: usize,
        subset: Vec<usize>,
    },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown builtin tensor `{0}`")]
    UnknownBuiltin(String),

    /// A structural property that must hold by construction was violated.
    #[error("certificate violated: {0}")]
    Falsified(String),
}
