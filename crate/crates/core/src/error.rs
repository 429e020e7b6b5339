use thiserror::Error;

/// Errors raised by the simulation and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Requested size exceeds a configured cap, or is below the minimum.
    #[error("capacity: {what} = {requested} outside allowed range [{min}, {max}]")]
    Capacity {
        what: &'static str,
        requested: usize,
        min: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The (alpha, beta) plane is undefined because no index, or every
    /// index, is marked.
    #[error("degenerate search plane: {marked} of {dim} indices marked")]
    DegeneratePlane { marked: usize, dim: usize },

    #[error("invalid search problem: {0}")]
    InvalidProblem(String),

    #[error("schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
