use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge (estimate {estimate}, error estimate {abs_error})")]
    NonConvergence { estimate: f64, abs_error: f64 },

    #[error("divergent integral: {0}")]
    Divergence(String),

    #[error("survival probability underflow at t = {0}")]
    Underflow(f64),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("non-finite likelihood: {0}")]
    NonFiniteLikelihood(String),

    #[error("all optimizer starts failed: {0}")]
    AllStartsFailed(String),

    #[error("observed information matrix is singular")]
    SingularInformation,

    #[error("fit has no covariance matrix")]
    MissingCovariance,

    #[error("infeasible scenario: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
