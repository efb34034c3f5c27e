use std::path::PathBuf;

use leafkit_core::LeafError;
use thiserror::Error;

/// Failures of a CLI invocation, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: cannot read: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: parse error at {location}: {message}")]
    Parse { path: PathBuf, location: String, message: String },
    #[error("{path}: shape error: {message}")]
    Shape { path: PathBuf, message: String },
    #[error(transparent)]
    Leaf(#[from] LeafError),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONTRACT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

impl CliError {
    /// `2` for malformed invocations and inputs, `3` for numerical
    /// preconditions the inputs fail to meet.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io { .. } | Self::Parse { .. } | Self::Shape { .. } => EXIT_USAGE,
            Self::Leaf(e) => match e {
                LeafError::Shape { .. }
                | LeafError::NonFinite { .. }
                | LeafError::NotSquare { .. }
                | LeafError::SizeMismatch { .. }
                | LeafError::InvalidParameter(_)
                | LeafError::UnsupportedKind(_) => EXIT_USAGE,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}
