//! Error type shared by every stage of the pipeline.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, MascotError>;

#[derive(Debug, Error)]
pub enum MascotError {
    /// A structure token such as `1AOR:AB` could not be understood.
    #[error("malformed structure token `{token}`: {reason}")]
    InputFormat { token: String, reason: String },

    /// The structure is neither on disk nor allowed to be downloaded.
    #[error("structure {id} not found locally (searched: {searched}) and remote fetching is disabled")]
    MissingInput { id: String, searched: String },

    #[error("failed to fetch {id}{}: {message}", status.map(|s| format!(" (HTTP {s})")).unwrap_or_default())]
    Fetch {
        id: String,
        status: Option<u16>,
        message: String,
    },

    /// PDB content was unusable.
    #[error("{source_name}{}: {message}", line.map(|l| format!(" line {l}")).unwrap_or_default())]
    Parse {
        source_name: String,
        line: Option<usize>,
        message: String,
    },

    #[error("DSSP format error in {source_name}{}: {message}", line.map(|l| format!(" line {l}")).unwrap_or_default())]
    DsspFormat {
        source_name: String,
        line: Option<usize>,
        message: String,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("length mismatch for {id}: structure has {expected} residues, secondary structure has {found}")]
    LengthMismatch {
        id: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numeric degeneracy: {0}")]
    NumericDegeneracy(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl MascotError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        MascotError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(source_name: &str, line: Option<usize>, message: impl Into<String>) -> Self {
        MascotError::Parse {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn dssp(source_name: &str, line: Option<usize>, message: impl Into<String>) -> Self {
        MascotError::DsspFormat {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }
}
