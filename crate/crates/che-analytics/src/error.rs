use snm_core::SnmError;
use thiserror::Error;

/// Errors raised by the characteristic-time analytics.
#[derive(Debug, Error)]
pub enum CheError {
    /// A model primitive failed (bad parameter, quadrature breakdown, ...).
    #[error(transparent)]
    Model(#[from] SnmError),

    /// An operation received a parameter outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Doubling the bracket never pushed `lambda * g` past the cache size.
    #[error(
        "characteristic-time bracket expansion stalled at t = {hi} \
         (lambda * g = {reached}, target {target})"
    )]
    BracketExpansion { hi: f64, reached: f64, target: f64 },

    /// The safeguarded root iteration hit its cap before meeting tolerance.
    #[error(
        "characteristic-time inversion stopped after {iterations} iterations \
         (best t = {best}, relative residual {residual:e})"
    )]
    RootNoConvergence {
        best: f64,
        residual: f64,
        iterations: usize,
    },

    /// `phi(-1) = 1` would mean contents are never requested at all.
    #[error("degenerate volume law: phi(-1) = 1 leaves no request mass")]
    DegenerateVolume,
}

pub type Result<T> = std::result::Result<T, CheError>;
