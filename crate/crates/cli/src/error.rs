use menulearn::ModelError;

/// Errors surfaced by the command-line front end. Each maps to a distinct
/// process exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("{name:?} is a {found}, expected a {expected}")]
    KindMismatch {
        name: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("bad weight: {0}")]
    BadWeight(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::UnknownName(_) => exit::UNKNOWN_NAME,
            CliError::KindMismatch { .. } => exit::KIND_MISMATCH,
            CliError::BadWeight(_) | CliError::BadArgument(_) => exit::BAD_ARGUMENT,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        match err {
            ModelError::BadWeight(w) => CliError::BadWeight(w),
            other => CliError::BadArgument(other.to_string()),
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    /// A check or self-test did not hold.
    pub const CHECK_FAILED: i32 = 1;
    pub const PARSE: i32 = 3;
    pub const UNKNOWN_NAME: i32 = 4;
    pub const KIND_MISMATCH: i32 = 5;
    pub const BAD_ARGUMENT: i32 = 6;
    pub const IO: i32 = 7;
}
