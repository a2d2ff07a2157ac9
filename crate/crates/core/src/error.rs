use thiserror::Error;

pub type Result<T> = std::result::Result<T, ChaError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChaError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate initial data: {0}")]
    DegenerateData(String),
    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),
    #[error("x = {x} lies outside the cloud range [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("flux is not convex on [{lo}, {hi}]")]
    NonConvexFlux { lo: f64, hi: f64 },
}

impl ChaError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ChaError::InvalidArgument(msg.into())
    }
}
