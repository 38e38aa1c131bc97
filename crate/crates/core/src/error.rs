use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A face set does not describe a triangulation.
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),

    /// The ambient set passed to an exchange does not contain the middle
    /// terms it must contain, so it was not a valid mutation context.
    #[error("exchange obstruction: {0}")]
    ExchangeObstruction(String),

    /// A backtracking search exhausted its node budget.
    #[error("search budget of {budget} nodes exhausted")]
    LimitExceeded { budget: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
