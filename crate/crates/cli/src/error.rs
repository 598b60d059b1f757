use std::fmt;

use conic_pencil::Error;

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments, unreadable or invalid config files.
    Usage {
        code: &'static str,
        message: String,
    },
    /// A geometric precondition of the library failed.
    Geometry(Error),
    /// The verification run finished with failing checks.
    Verification(String),
    Io(String),
}

impl CliError {
    pub fn usage(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { code, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } | CliError::Io(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage { code, .. } => code,
            CliError::Geometry(e) => e.code(),
            CliError::Verification(_) => "VerificationFailed",
            CliError::Io(_) => "Io",
        }
    }

    /// `error=<code> reason=<message>` on a single line.
    pub fn line(&self) -> String {
        let reason = self.to_string().replace('\n', " ");
        format!("error={} reason={}", self.code(), reason)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage { message, .. } => f.write_str(message),
            CliError::Geometry(Error::InsideParabola) => f.write_str("inside parabola: no span"),
            CliError::Geometry(e) => write!(f, "{e}"),
            CliError::Verification(m) => f.write_str(m),
            CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(m) => CliError::usage("InvalidConfig", m),
            e => CliError::Geometry(e),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
