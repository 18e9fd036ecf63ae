use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The coin belongs to a different closed-form case (a = 0, b = 0 or abcd != 0).
    #[error("wrong case: {0}")]
    WrongCase(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("chirality dimension mismatch: coin has {coin}, state has {state}")]
    DimensionMismatch { coin: usize, state: usize },

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;

impl From<serde_json::Error> for WalkError {
    fn from(e: serde_json::Error) -> Self {
        WalkError::Json(e.to_string())
    }
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(WalkError::InvalidArgument(msg.into()))
}
