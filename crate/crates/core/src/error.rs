use thiserror::Error;

/// Errors raised when an input is rejected.
///
/// Law violations inside a category or functor are not errors; they are
/// collected into reports by the validators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("functors do not share a target category")]
    TargetMismatch,

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("no morphism {payload} : {dom} -> {cod} in {category}")]
    MissingMorphism {
        category: String,
        dom: String,
        cod: String,
        payload: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
