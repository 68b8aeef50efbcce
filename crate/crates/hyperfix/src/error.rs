use std::path::PathBuf;

use hyperfix_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const NUMERIC: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Io { .. } => exit::IO,
            CliError::Core(e) => match e {
                CoreError::Domain(_)
                | CoreError::GridMismatch
                | CoreError::DimensionMismatch { .. }
                | CoreError::Precondition(_)
                | CoreError::Unsupported(_) => exit::CONFIG,
                CoreError::DomainEscape { .. }
                | CoreError::Numeric { .. }
                | CoreError::Estimation(_)
                | CoreError::NonConvergence { .. }
                | CoreError::Invariant { .. } => exit::NUMERIC,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
