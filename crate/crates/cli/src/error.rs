use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nanoloop_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read config {path}: {source}")]
    ConfigRead { path: PathBuf, source: std::io::Error },

    #[error("invalid config {path}: {source}")]
    ConfigParse { path: PathBuf, source: serde_json::Error },

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 3 when no certified root exists, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        use nanoloop_core::Error as E;
        match self {
            CliError::Core(E::NoRoot { .. } | E::Unconverged { .. }) => 3,
            CliError::Core(_) | CliError::Usage(_) | CliError::ConfigParse { .. } => 2,
            CliError::ConfigRead { .. } | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
