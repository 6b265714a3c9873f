use thiserror::Error;

/// Errors raised by table construction, family builders and the diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter outside the admissible domain: {0}")]
    Domain(String),

    /// A linearization or convolution coefficient fell below the negativity
    /// tolerance; the input does not define a hypergroup.
    #[error("structure failure: {0}")]
    Structure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {0} is outside the index set")]
    Index(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("linear program infeasible: {0}")]
    Infeasible(String),

    #[error("linear program solver failure: {0}")]
    Solver(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
