use thermoprobe_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("numerical failure: {0}")]
    Numerical(CoreError),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config { field: field.into(), reason: reason.into() }
    }

    /// 2 for configuration problems, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let field = match &e {
            CoreError::InvalidParameter { name, .. } => *name,
            CoreError::NonPositiveTemperature(_) => "temperature",
            CoreError::InvalidDegeneracy { .. } => "n0",
            CoreError::DimensionTooSmall { .. } | CoreError::UnsupportedDegeneracy(_) => "n",
            _ => return CliError::Numerical(e),
        };
        CliError::Config { field: field.into(), reason: e.to_string() }
    }
}
