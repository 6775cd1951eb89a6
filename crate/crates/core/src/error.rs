use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph construction, analysis and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("schema error in {record}: {reason}")]
    Schema { record: String, reason: String },

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("path count overflow: more than {} paths", u128::MAX)]
    Overflow,

    #[error("enumeration cap of {cap} paths exceeded ({found} found before stopping)")]
    CapacityExceeded { cap: usize, found: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn schema(record: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Schema {
            record: record.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
