use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} has degree 0")]
    IsolatedVertex(usize),

    #[error("cheeger ratio undefined: {0}")]
    UndefinedRatio(&'static str),

    #[error("vertex set is empty")]
    EmptySet,

    #[error("vertex set of size {size} exceeds the limit of {limit}")]
    SetTooLarge { size: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a probability vector: {0}")]
    NotProbability(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("no segment with volume at most {max_volume}")]
    NoSegment { max_volume: u64 },

    #[error("failed to generate a connected graph after {0} attempts")]
    NotConnected(usize),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
