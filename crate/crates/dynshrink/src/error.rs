use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by samplers, model fits, and data handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A precision matrix was not positive definite at the given pivot index,
    /// even after any jitter escalation the caller applied.
    #[error("matrix not positive definite at index {index}{}", context.as_deref().map(|c| format!(" ({c})")).unwrap_or_default())]
    NotPositiveDefinite {
        index: usize,
        context: Option<String>,
    },

    /// The sampler produced or encountered a non-finite value it cannot
    /// recover from.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Input data could not be parsed or failed validation.
    #[error("data error: {0}")]
    Data(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
}
