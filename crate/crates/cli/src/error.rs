use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] goldfish_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 for failures while running.
    pub fn exit_code(&self) -> i32 {
        use goldfish_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::InvalidInput(_) | E::NuTwoExcluded | E::Unsupported(_) | E::DimensionMismatch { .. }) => {
                2
            }
            CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
