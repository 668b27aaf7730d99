use thiserror::Error;

/// Errors produced by the model, solvers and integrator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("unknown parameter field `{0}`")]
    UnknownField(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("linear system is singular (pivot {pivot:e} below threshold {threshold:e})")]
    Singular { pivot: f64, threshold: f64 },

    #[error("fixed-point iteration did not converge after {iterations} iterations (last change {last_change:e})")]
    NotConverged { iterations: usize, last_change: f64 },

    #[error("state became non-finite at t = {time}")]
    NonFiniteState { time: f64 },

    #[error("death rate d is zero; the asymptote Λ/d is undefined")]
    ZeroDeathRate,

    #[error("scenario `{0}` has no closed-form eigenvalues")]
    NoClosedForm(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Whether the failure is numerical rather than a problem with the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::NotConverged { .. }
                | Error::NonFiniteState { .. }
                | Error::ZeroDeathRate
        )
    }
}
