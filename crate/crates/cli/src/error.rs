use std::io;
use std::path::PathBuf;

use cdawg_maw::index::BuildError;
use cdawg_maw::persist::PersistError;
use cdawg_maw::text::WrapError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot load index {path}: {source}")]
    Load { path: PathBuf, source: PersistError },
    #[error("input cannot be indexed: {0}")]
    Input(#[from] WrapError),
    #[error("index construction failed: {0}")]
    Build(#[from] BuildError),
    #[error("cannot write {what}: {source}")]
    Write { what: String, source: io::Error },
    #[error("cannot write index file {path}: {source}")]
    Save { path: PathBuf, source: PersistError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Load { .. } => 1,
            CliError::Input(_) => 2,
            CliError::Write { .. } | CliError::Save { .. } => 3,
            CliError::Usage(_) => 4,
            CliError::Build(_) | CliError::Invariant(_) => 5,
        }
    }

    pub fn stdout(source: io::Error) -> CliError {
        CliError::Write {
            what: "standard output".into(),
            source,
        }
    }
}
