use std::path::PathBuf;

use thiserror::Error;

/// Exit statuses: 0 success, 1 usage or configuration error, 2 no root,
/// 3 verification failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    NoRoot(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Eval(fracstefan::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NoRoot(_) => 2,
            CliError::Verification(_) => 3,
            _ => 1,
        }
    }
}

impl From<fracstefan::Error> for CliError {
    fn from(e: fracstefan::Error) -> Self {
        match e {
            fracstefan::Error::NoRoot { .. } => CliError::NoRoot(e.to_string()),
            other => CliError::Eval(other),
        }
    }
}
