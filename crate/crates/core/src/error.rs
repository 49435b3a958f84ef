use thiserror::Error;

/// Errors raised by constructions and searches in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("invalid table of dimensions: {0}")]
    InvalidTable(String),

    #[error("table {table} has dimension {dim} > n = {n}")]
    DimensionTooLarge { table: String, dim: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("out of bounds: {0}")]
    OutOfBounds(String),

    #[error("search bound exceeded: {0}")]
    SearchBound(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("square does not commute: {0}")]
    NotCommutative(String),

    #[error("presheaf invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
