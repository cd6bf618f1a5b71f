use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("SVD did not converge for a {rows}x{cols} matrix after {sweeps} sweeps")]
    NoConvergence { rows: usize, cols: usize, sweeps: usize },

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("claim `{0}` is recorded, not machine-checked")]
    RecordedOnly(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
