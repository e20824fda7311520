use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] renorm_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot fit convergence rate: {0}")]
    Degenerate(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 usage or domain error, 2 enumeration cap exceeded, 3 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(renorm_core::Error::CapExceeded { .. }) => 2,
            CliError::Io { .. } => 3,
            _ => 1,
        }
    }
}
