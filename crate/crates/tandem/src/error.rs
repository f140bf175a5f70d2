use snm_core::SnmError;
use thiserror::Error;

/// Errors from the tandem bound computations.
#[derive(Debug, Error)]
pub enum TandemError {
    /// Quadrature or model failure from the core numerics.
    #[error(transparent)]
    Model(#[from] SnmError),

    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, TandemError>;
