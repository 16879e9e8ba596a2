use std::path::PathBuf;

use thiserror::Error;

/// Process exit status for user and configuration errors.
pub const EXIT_CONFIG: i32 = 2;
/// Process exit status for numerical failures and failed self-checks.
pub const EXIT_NUMERICAL: i32 = 3;
/// Process exit status for I/O failures on output artifacts.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error(transparent)]
    Numerical(kickwalk::Error),

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("cannot read {path}: {reason}")]
    Input { path: PathBuf, reason: String },

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Some cells of a sweep failed; `code` is the most severe cell status.
    #[error("{} sweep cell(s) failed: {}", .failed.len(), .failed.join("; "))]
    Sweep { failed: Vec<String>, code: i32 },
}

impl CliError {
    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Input { .. } => EXIT_CONFIG,
            CliError::Numerical(_) | CliError::SelfCheck(_) => EXIT_NUMERICAL,
            CliError::Output { .. } => EXIT_IO,
            CliError::Sweep { code, .. } => *code,
        }
    }
}

impl From<kickwalk::Error> for CliError {
    fn from(e: kickwalk::Error) -> Self {
        use kickwalk::Error as E;
        match e.root() {
            E::Argument { field, reason } => CliError::config(*field, reason.clone()),
            E::Range { .. } => CliError::config("classes", e.to_string()),
            E::Size { .. } => CliError::config("steps", e.to_string()),
            _ => CliError::Numerical(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
