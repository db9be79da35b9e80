use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI run, split by the exit status they map to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] lgp_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 2 for bad input, 3 when a computed result breaks a guaranteed property.
    pub fn exit_code(&self) -> i32 {
        use lgp_core::Error as E;
        match self {
            CliError::Validation(_) | CliError::Io { .. } | CliError::Format { .. } => 2,
            CliError::Invariant(_) => 3,
            CliError::Core(e) => match e {
                E::NestingViolated { .. }
                | E::ReversedInequalityFails { .. }
                | E::NonTreeAdjacency(_)
                | E::DecompositionIncomplete { .. }
                | E::Incomparable(_) => 3,
                _ => 2,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Format { path: path.into(), message: message.to_string() }
    }
}
