use std::path::PathBuf;

use conceptq_core::ErrorKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] conceptq_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Malformed input file; `row` is 1-based with the header as row 1.
    #[error("{}: row {row}: {message}", path.display())]
    Row {
        path: PathBuf,
        row: u64,
        message: String,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("provider error for {phrase:?} at {endpoint}: {reason}")]
    Provider {
        phrase: String,
        endpoint: String,
        reason: String,
    },
    #[error("model verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    /// 0 success, 1 usage, 2 data, 3 infeasible model.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Model(e) if e.kind() == ErrorKind::Infeasible => 3,
            Error::Verification(_) => 3,
            _ => 2,
        }
    }
}
