use thiserror::Error;

/// Everything that can go wrong in the library. Validation failures map to
/// CLI exit code 2, `Internal` to exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible Lie type: {0}")]
    InvalidType(String),
    #[error("type mismatch: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
    #[error("torus coordinates must be nonzero")]
    ZeroCoordinate,
    #[error("prime content of {0} exceeds 2^64")]
    TooLarge(String),
    #[error("duplicate support point {0}")]
    DuplicatePoint(String),
    #[error("infinite quotient: lattice has rank {rank} in dimension {dim}")]
    InfiniteIndex { rank: usize, dim: usize },
    #[error("malformed document: {0}")]
    Document(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
