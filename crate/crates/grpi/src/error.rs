use std::path::PathBuf;

use grpi_core::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {source}")]
    Group { line: usize, source: GroupError },

    #[error(transparent)]
    Algebra(#[from] GroupError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
