use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] solvops::Error),
    #[error("invalid arguments: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SPECTRAL_POINT: i32 = 3;
pub const EXIT_ORACLE_UNRELIABLE: i32 = 4;
pub const EXIT_THRESHOLD: i32 = 5;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use solvops::Error as E;
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Core(e) => match e {
                E::InvalidParameter(_) | E::Domain(_) | E::Unsupported(_) | E::SingularTime(_) => EXIT_VALIDATION,
                E::SpectralPoint(_) => EXIT_SPECTRAL_POINT,
                E::OracleUnreliable(_)
                | E::NonConvergence { .. }
                | E::AsymptoticRegime(_)
                | E::NoValidPath(_)
                | E::Quadrature { .. }
                | E::Extrapolation(_) => EXIT_ORACLE_UNRELIABLE,
                E::Unbounded(_) => EXIT_THRESHOLD,
            },
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_FAILURE,
        }
    }
}

/// Short tag for a core error, used in the `path` column of failed scan cells.
pub fn error_class(e: &solvops::Error) -> &'static str {
    use solvops::Error as E;
    match e {
        E::Domain(_) => "domain",
        E::NonConvergence { .. } => "non_convergence",
        E::AsymptoticRegime(_) => "asymptotic_regime",
        E::NoValidPath(_) => "no_valid_path",
        E::InvalidParameter(_) => "invalid_parameter",
        E::SpectralPoint(_) => "spectral_point",
        E::Unsupported(_) => "unsupported",
        E::OracleUnreliable(_) => "oracle_unreliable",
        E::Quadrature { .. } => "quadrature",
        E::SingularTime(_) => "singular_time",
        E::Unbounded(_) => "unbounded",
        E::Extrapolation(_) => "extrapolation",
    }
}
