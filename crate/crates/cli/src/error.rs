//! CLI error classification. Exit codes: 1 usage, 2 data, 3 internal.

use rdc_core::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown names, impossible parameter combinations.
    Usage(String),
    /// The input data cannot support the requested computation.
    Data(String),
    /// Should-not-happen conditions; a bug if ever seen.
    Internal(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Internal(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match &err {
            CoreError::InvalidParameter { .. }
            | CoreError::NonPositiveParameter { .. }
            | CoreError::ModelSizeOutOfRange { .. }
            | CoreError::UnivariateResponseRequired { .. } => CliError::Usage(err.to_string()),
            CoreError::TooFewSamples { .. }
            | CoreError::NonFinite { .. }
            | CoreError::SampleCountMismatch { .. }
            | CoreError::ConstantResponse => CliError::Data(err.to_string()),
            CoreError::Replicate { source, .. } => match CliError::from((**source).clone()) {
                CliError::Usage(_) => CliError::Usage(err.to_string()),
                CliError::Data(_) => CliError::Data(err.to_string()),
                CliError::Internal(_) => CliError::Internal(err.to_string()),
            },
            _ => CliError::Internal(err.to_string()),
        }
    }
}
