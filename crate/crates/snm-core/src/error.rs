use thiserror::Error;

/// Errors produced by model construction and numerical primitives.
#[derive(Debug, Error)]
pub enum SnmError {
    /// A constructor or operation received a parameter outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The volume moment generating function is only defined on theta <= 0.
    #[error("volume mgf undefined for theta = {theta}: heavy-tailed volumes require theta <= 0")]
    MgfDomain { theta: f64 },

    /// Adaptive quadrature hit the subdivision cap before reaching tolerance.
    #[error(
        "{context}: quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error bound {abs_error:e})"
    )]
    QuadratureNoConvergence {
        context: &'static str,
        estimate: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    /// An integrand produced NaN or an infinity; the integral is meaningless.
    #[error("{context}: integrand returned a non-finite value at x = {at}")]
    NonFiniteIntegrand { context: &'static str, at: f64 },
}

pub type Result<T> = std::result::Result<T, SnmError>;
