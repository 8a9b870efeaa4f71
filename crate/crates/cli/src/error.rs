use std::fmt;

/// Exit codes: 0 success, 1 validation failure, 2 parse or configuration
/// error, 3 cap exceeded.
#[derive(Debug)]
pub enum CliError {
    Parse { source: String, message: String },
    Config(String),
    Library(skewbrace::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::Library(e) if e.is_cap() => 3,
            CliError::Library(_) => 1,
        }
    }

    pub fn parse(source: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse {
            source: source.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { source, message } => write!(f, "parse error in {source}: {message}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<skewbrace::Error> for CliError {
    fn from(e: skewbrace::Error) -> Self {
        CliError::Library(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
