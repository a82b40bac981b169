use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("construction failed in {primitive}: {reason}")]
    Construction { primitive: &'static str, reason: String },
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn construction(primitive: &'static str, reason: impl Into<String>) -> Error {
    Error::Construction { primitive, reason: reason.into() }
}
