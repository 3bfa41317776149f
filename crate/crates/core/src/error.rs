use thiserror::Error;

/// Errors raised by the numerical layers and the bound evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e} after {subdivisions} subdivisions")]
    Convergence {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    /// The target value is not attained by the monotone function on its domain.
    #[error("target {target:e} outside the range [{low:e}, {high:e}] of the inverted function")]
    Range { target: f64, low: f64, high: f64 },

    /// Bracket expansion never produced a sign change.
    #[error("no sign change found: {0}")]
    Bracket(String),

    /// The discretization cannot resolve the requested eigenvalues.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// The requested bound does not apply to this geometric setting.
    #[error("scope error: {0}")]
    Scope(String),

    /// Descriptor or provider data is missing or inconsistent.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
