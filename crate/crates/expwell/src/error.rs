use std::path::PathBuf;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const SELFCHECK: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const ENVELOPE: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{flag}: {source}")]
    Flag {
        flag: &'static str,
        #[source]
        source: expwell_core::Error,
    },
    #[error(transparent)]
    Numeric(#[from] expwell_core::Error),
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Flag { source, .. } | CliError::Numeric(source) => match source {
                expwell_core::Error::Envelope { .. } => exit::ENVELOPE,
                _ => exit::DOMAIN,
            },
            CliError::Usage { .. } => exit::DOMAIN,
            CliError::Io { .. } | CliError::Csv { .. } => exit::IO,
        }
    }

    pub fn flag(flag: &'static str) -> impl FnOnce(expwell_core::Error) -> CliError {
        move |source| CliError::Flag { flag, source }
    }
}
