use std::path::PathBuf;

use thiserror::Error;
use treescape::ParseError;

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const LABEL_SET: u8 = 3;
    pub const MODE: u8 = 4;
    pub const TOO_LARGE: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {}", path.display(), source.kind)]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        #[source]
        source: ParseError,
    },
    #[error("{}:{line}: {message}", path.display())]
    Taxa {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("line {line} has a different label set than line {first_line}")]
    LabelSet { line: usize, first_line: usize },
    #[error("{}: snapshot trees have a different label set than line {line}", path.display())]
    SnapshotLabels { path: PathBuf, line: usize },
    #[error("{0}")]
    Mode(String),
    #[error("{m} input trees exceed --max-m {max_m}; the oracle is quadratic in m")]
    TooLarge { m: usize, max_m: usize },
    #[error("{}: {source}", path.display())]
    Snapshot {
        path: PathBuf,
        #[source]
        source: treescape::Error,
    },
    #[error(transparent)]
    Core(#[from] treescape::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Taxa { .. }
            | CliError::Snapshot { .. } => exit::INPUT,
            CliError::LabelSet { .. } | CliError::SnapshotLabels { .. } => exit::LABEL_SET,
            CliError::Mode(_) => exit::MODE,
            CliError::TooLarge { .. } => exit::TOO_LARGE,
            CliError::Core(e) => match e {
                treescape::Error::Parse(_) => exit::INPUT,
                treescape::Error::LabelSetMismatch { .. } => exit::LABEL_SET,
                treescape::Error::ModeMismatch { .. }
                | treescape::Error::MixedRootedness { .. } => exit::MODE,
                _ => exit::MISMATCH,
            },
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
