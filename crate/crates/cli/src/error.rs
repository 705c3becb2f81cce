use galois_cover::error::{Error as ModelError, ErrorFamily};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("invalid document at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_LIMIT: i32 = 5;
pub const EXIT_INTERNAL: i32 = 6;

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } | CliError::Output(_) => "Io",
            CliError::Parse { .. } => "ParseError",
            CliError::Schema(_) => "SchemaViolation",
            CliError::Argument(_) => "InvalidArgument",
            CliError::Model(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
            CliError::Parse { .. } | CliError::Schema(_) | CliError::Argument(_) => EXIT_INPUT,
            CliError::Model(e) => match e.family() {
                ErrorFamily::Input => EXIT_INPUT,
                ErrorFamily::Validation => EXIT_VALIDATION,
                ErrorFamily::Unsupported => EXIT_UNSUPPORTED,
                ErrorFamily::Limit => EXIT_LIMIT,
                ErrorFamily::Internal => EXIT_INTERNAL,
            },
        }
    }
}
