use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] geoverlap::Error),

    #[error("replay mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> CliError {
        CliError::Format { path: path.into(), message: message.into() }
    }

    /// 3 for budget exhaustion, 2 for everything a caller can fix, 1 for
    /// replay mismatches.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                geoverlap::Error::BudgetExceeded(_)
                | geoverlap::Error::RetryLimit { .. }
                | geoverlap::Error::SearchFailed { .. },
            ) => 3,
            CliError::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
