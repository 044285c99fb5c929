use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. `line` is 1-based; 0 when the input has no lines.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid code word: {0}")]
    InvalidCodeWord(String),

    #[error("{sigma} does not refine {pi}")]
    Refinement { sigma: String, pi: String },

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{i} and {j} lie in the same block of {pi}", j = .i + 1)]
    SameBlock { i: usize, pi: String },

    #[error("{lower} is not strictly below {upper}")]
    Order { lower: String, upper: String },

    #[error("ground sets differ: [2,{left}] vs [2,{right}]")]
    GroundSetMismatch { left: usize, right: usize },

    #[error("n = {n} exceeds the enumeration bound {max}")]
    BoundExceeded { n: usize, max: usize },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("inexact division computing {0}")]
    InexactDivision(String),
}
