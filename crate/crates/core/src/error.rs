use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid netflow: {0}")]
    InvalidNetflow(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid integrand: {0}")]
    InvalidIntegrand(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polytope is not full-dimensional: {0}")]
    NotFullDimensional(String),

    #[error("Gamma function evaluated at nonpositive argument {two_x}/2")]
    GammaPole { two_x: i64 },

    #[error("result carries a residual factor pi^({0}/2)")]
    ResidualPi(i64),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
