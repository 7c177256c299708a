use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("unsupported graph size n = {n} (limit {limit})")]
    UnsupportedSize { n: usize, limit: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("eigensolver failed to converge on a {n}x{n} matrix after {sweeps} sweeps")]
    NoConvergence { n: usize, sweeps: usize },

    #[error("zero tolerance {tolerance:e} is below the solver residual bound {residual:e}")]
    ToleranceBelowResidual { tolerance: f64, residual: f64 },

    #[error("projected gradient did not reach tolerance {tol:e} within {iters} iterations (tail: {tail:?})")]
    Convergence { iters: usize, tol: f64, tail: Vec<f64> },

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
