use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] qdecode::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    /// 2 for configuration problems, 3 for the enumeration budget guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                qdecode::Error::BudgetExceeded { .. } => 3,
                qdecode::Error::Io(_) | qdecode::Error::NoFailures => 1,
                _ => 2,
            },
            CliError::Io(_) | CliError::Json(_) | CliError::VerifyFailed => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
