use std::io;
use std::path::PathBuf;

use vlppm_core::{ConfigError, DecodeError, Mode};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    Corrupt {
        path: PathBuf,
        #[source]
        source: DecodeError,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{file}: {mode:?} order {order} did not reproduce its input")]
    Roundtrip { file: String, mode: Mode, order: u8 },
    #[error("{}:{line}: {msg}", path.display())]
    Manifest { path: PathBuf, line: usize, msg: String },
    #[error("{0}")]
    Report(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}
