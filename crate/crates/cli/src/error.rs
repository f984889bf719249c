use std::path::PathBuf;

use thiserror::Error;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification check fails.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status when no admissible contour exists for the requested point.
pub const EXIT_NO_CONTOUR: i32 = 2;
/// Exit status for malformed invocations and invalid parameters (`EX_USAGE`).
pub const EXIT_USAGE: i32 = 64;
/// Exit status for unreadable or unwritable files (`EX_IOERR`).
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] jacobi_flow::Error),

    #[error("verification failed: {0} check(s) did not pass")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
            CliError::Core(e) => match e {
                jacobi_flow::Error::InvalidParams(_)
                | jacobi_flow::Error::OrderTooLarge { .. }
                | jacobi_flow::Error::Domain { .. } => EXIT_USAGE,
                jacobi_flow::Error::NoAdmissibleContour { .. } => EXIT_NO_CONTOUR,
                _ => EXIT_VERIFY_FAILED,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
