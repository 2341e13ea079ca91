//! Machine-readable CLI errors.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Malformed or contradictory configuration document.
    Config,
    /// Physically invalid value.
    Range,
    /// Command-line misuse (unknown subcommand, missing output directory, ...).
    Usage,
    /// Failure while running the requested computation.
    Physics,
    Io,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Usage,
            message: message.into(),
            path: None,
        }
    }

    pub fn physics(e: aifsim_core::Error) -> Self {
        CliError {
            kind: ErrorKind::Physics,
            message: e.to_string(),
            path: None,
        }
    }

    pub fn range(path: &str, e: aifsim_core::Error) -> Self {
        CliError {
            kind: ErrorKind::Range,
            message: e.to_string(),
            path: Some(path.to_string()),
        }
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        CliError {
            kind: ErrorKind::Io,
            message: format!("{context}: {e}"),
            path: None,
        }
    }

    /// Process exit code: configuration and usage problems exit 1,
    /// execution failures exit 2.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Config | ErrorKind::Range | ErrorKind::Usage => 1,
            ErrorKind::Physics | ErrorKind::Io => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{p}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for CliError {}
