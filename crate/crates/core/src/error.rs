use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("invalid isogeny: {0}")]
    InvalidIsogeny(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),
    #[error("symbol is not a member of the family")]
    NotAMember,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("automorphism does not stabilize the parabolic")]
    TwistDoesNotStabilize,
    #[error("decomposition failure: {0}")]
    DecompositionFailure(String),
    #[error("missing regular element: {0}")]
    MissingRegularElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::DecompositionFailure(_) | Error::Data(_))
    }
}
