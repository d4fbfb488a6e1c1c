use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search exhausted after {trials} trials ({found} of {wanted} found)")]
    SearchExhausted {
        trials: usize,
        found: usize,
        wanted: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A constructed object failed its own re-verification.
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
