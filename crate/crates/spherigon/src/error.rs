use std::path::PathBuf;

use reduced_polygon::ReducedError;
use sphere_core::GeomError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const SOLVER: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Reduced(#[from] ReducedError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => exit::VERIFICATION_FAILED,
            CliError::Reduced(
                ReducedError::SolverDiverged { .. }
                | ReducedError::RelativeInteriorViolated(_)
                | ReducedError::CollapsedToRegular(_),
            ) => exit::SOLVER,
            _ => exit::USAGE,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
