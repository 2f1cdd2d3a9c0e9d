//! Errors of the command line front end and their exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("invalid data: {0}")]
    Spec(#[from] arrvar::Error),
    #[error("{0}")]
    Runtime(String),
}

/// Exit status for successful runs.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check fails or a computation aborts.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_INVALID: i32 = 2;
/// Exit status under `--strict` when a verdict rests on the heuristic oracle.
pub const EXIT_HEURISTIC: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Schema(_) | CliError::Spec(_) => EXIT_INVALID,
            CliError::Runtime(_) => EXIT_FAILURE,
        }
    }
}
