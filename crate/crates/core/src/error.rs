use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },

    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u64, max: usize },

    #[error("invalid parameter for `{family}`: {reason}")]
    InvalidParameter { family: String, reason: String },

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("character table construction failed: {0}")]
    Splitting(String),

    #[error("character table rejected: {0}")]
    Validation(String),

    #[error("integrality check failed: {0}")]
    Integrality(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("hypergroup inconsistency: {0}")]
    Hypergroup(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {reason}", path.display())]
    Parse { path: PathBuf, reason: String },

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable code for the error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedSpec { .. } => "E_SPEC",
            Error::OrderTooLarge { .. } => "E_ORDER",
            Error::InvalidParameter { .. } => "E_PARAM",
            Error::NotNormal(_) => "E_NOT_NORMAL",
            Error::InvalidGroup(_) => "E_GROUP",
            Error::Splitting(_) => "E_SPLIT",
            Error::Validation(_) => "E_VALIDATION",
            Error::Integrality(_) => "E_INTEGRALITY",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Hypergroup(_) => "E_HYPERGROUP",
            Error::Io { .. } => "E_IO",
            Error::Parse { .. } => "E_PARSE",
            Error::Unsupported(_) => "E_UNSUPPORTED",
        }
    }
}
