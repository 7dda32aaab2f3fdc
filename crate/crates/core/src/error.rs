use thiserror::Error;

pub type Result<T> = std::result::Result<T, GtiError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GtiError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("truncation required: {0}")]
    TruncationRequired(String),

    #[error("group of order {order} exceeds the dense limit {cap}")]
    TooLarge { order: usize, cap: usize },
}

impl GtiError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GtiError::InvalidInput(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        GtiError::ShapeMismatch(msg.into())
    }

    /// Machine-readable kind used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            GtiError::InvalidInput(_) => "invalid-input",
            GtiError::ShapeMismatch(_) => "shape-mismatch",
            GtiError::TruncationRequired(_) => "truncation-required",
            GtiError::TooLarge { .. } => "too-large",
        }
    }
}
