use std::path::{Path, PathBuf};

use highgenus::surface::StageError;
use highgenus::{Error, ErrorFamily};

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
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
    #[error("{}: {source}", path.display())]
    Surface {
        path: PathBuf,
        #[source]
        source: Error,
    },
    #[error(transparent)]
    Stage(#[from] StageError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("validation failed: {0}")]
    Invalid(String),
}

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SURGERY: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_INFEASIBLE: i32 = 5;

fn family_code(f: ErrorFamily) -> i32 {
    match f {
        ErrorFamily::Config => EXIT_CONFIG,
        ErrorFamily::Surgery => EXIT_SURGERY,
        ErrorFamily::Io => EXIT_IO,
        ErrorFamily::Infeasible => EXIT_INFEASIBLE,
        ErrorFamily::Internal => EXIT_INTERNAL,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io { .. } | CliError::Csv { .. } => EXIT_IO,
            // An unreadable or malformed surface file is an io failure
            // whatever the underlying core error is.
            CliError::Surface { .. } => EXIT_IO,
            CliError::Stage(e) => match e.source.family() {
                ErrorFamily::Internal => EXIT_SURGERY,
                f => family_code(f),
            },
            CliError::Core(e) => family_code(e.family()),
            CliError::Invalid(_) => EXIT_SURGERY,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn csv(path: &Path, source: csv::Error) -> Self {
        CliError::Csv {
            path: path.to_path_buf(),
            source,
        }
    }
}
