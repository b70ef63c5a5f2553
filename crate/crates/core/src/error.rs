use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a genus-2 curve over Q: {0}")]
    NotGenusTwo(String),

    #[error("model has bad reduction at {p}")]
    BadReduction { p: u32 },

    #[error("matrix is not a symplectic similitude for J")]
    NotSimilitude,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no valid records ingested")]
    EmptyIngest,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::NotGenusTwo(_) => "NotGenusTwo",
            Error::BadReduction { .. } => "BadReduction",
            Error::NotSimilitude => "NotSimilitude",
            Error::Parse(_) => "ParseError",
            Error::EmptyIngest => "EmptyIngest",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
        }
    }
}
