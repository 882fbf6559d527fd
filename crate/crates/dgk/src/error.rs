use std::path::PathBuf;

/// Errors that stop a command before any verification verdict: unreadable
/// or malformed input, bad flags, mismatched instances. All exit with code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{at}: {message}")]
    Structural { at: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn structural(at: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Structural {
            at: at.into(),
            message: message.into(),
        }
    }

    /// Prefixes the location with a file name.
    pub fn in_file(self, path: &std::path::Path) -> Self {
        match self {
            CliError::Structural { at, message } => CliError::Structural {
                at: format!("{}: {at}", path.display()),
                message,
            },
            e => e,
        }
    }
}
