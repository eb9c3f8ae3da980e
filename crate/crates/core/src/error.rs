use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid volume profile: {0}")]
    InvalidProfile(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("ideal is not m-primary: {0}")]
    NotMPrimary(String),

    #[error("unbounded or empty polyhedron: {0}")]
    Unbounded(String),

    #[error("linear program: {0}")]
    Lp(String),

    #[error("routes disagree: {0}")]
    RouteMismatch(String),

    #[error("invalid record: {0}")]
    InvalidRecord(String),

    #[error("unknown record {0:?}")]
    UnknownRecord(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
