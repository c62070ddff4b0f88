//! Command-line front end: problem files in, CSV and JSON out.

pub mod commands;
pub mod format;
pub mod problem;

use thiserror::Error;

pub use commands::{
    certify, discretize, reproduce, solve, CertificateJson, RunOptions, Table, WindowJson,
};
pub use problem::ProblemFile;

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for malformed input or arguments.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code when the solver or the certificate rejects the problem.
pub const EXIT_REJECTED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Rejected(_) => EXIT_REJECTED,
        }
    }
}

impl From<deltaspec::Error> for CliError {
    fn from(e: deltaspec::Error) -> Self {
        use deltaspec::Error as E;
        match e {
            E::InvalidInput(_)
            | E::NonNegativeLambda(_)
            | E::UnsupportedTruncation(_)
            | E::SupportExceedsGrid { .. }
            | E::DepthCap { .. } => CliError::Validation(e.to_string()),
            E::NotAnEigenvalue { .. }
            | E::FormDistanceTooLarge(_)
            | E::WindowPrecondition(_)
            | E::Hypothesis(_) => CliError::Rejected(e.to_string()),
        }
    }
}
