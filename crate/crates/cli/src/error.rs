use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] weilcoh::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(weilcoh::Error::ResourceCap { .. }) => 3,
            CliError::Core(weilcoh::Error::InvalidArgument(_) | weilcoh::Error::IndexOutOfRange(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}
