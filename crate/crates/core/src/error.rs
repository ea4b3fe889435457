use thiserror::Error;

/// Errors raised by the algebra kernel and the completion drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shift rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("shift {divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("shift exponent overflow")]
    ExponentOverflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("invalid ring signature: {0}")]
    InvalidSignature(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("ordering is not compatible with the order function")]
    NotOrdCompatible,

    #[error("truncation degree must be non-negative")]
    NegativeTruncation,

    #[error("invalid relation family: {0}")]
    InvalidRelations(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("variable {0} lies outside the normal staircase")]
    OutsideStaircase(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
