use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] curiosity_core::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config file error: {0}")]
    ConfigFile(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code: 2 for validation problems, 3 for resource or
    /// convergence failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use curiosity_core::Error as Core;
        match self {
            CliError::Config(_) | CliError::ConfigFile(_) => 2,
            CliError::Core(core) => match core {
                Core::ResourceBudget { .. } | Core::NoConvergence { .. } => 3,
                _ => 2,
            },
            CliError::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
