use num_complex::Complex64;
use thiserror::Error;

/// Failure classes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms (partial sum {partial})")]
    NonConvergence { terms: usize, partial: Complex64 },

    #[error("asymptotic regime not reached: {0}")]
    AsymptoticRegime(String),

    #[error("no valid evaluation path: {0}")]
    NoValidPath(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spectral parameter lies in the spectrum: {0}")]
    SpectralPoint(String),

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("oracle unreliable: {0}")]
    OracleUnreliable(String),

    #[error("quadrature did not reach tolerance (value {value}, error estimate {err:e})")]
    Quadrature { value: Complex64, err: f64 },

    #[error("kernel is singular at t = {0}")]
    SingularTime(f64),

    #[error("row or column integral diverges: {0}")]
    Unbounded(String),

    #[error("extrapolation did not converge: {0}")]
    Extrapolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
