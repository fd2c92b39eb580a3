use std::path::PathBuf;

use polyfold::foldcore::{FoldError, ModelParseError};
use polyfold::search::SearchError;
use polyfold::{LatticeError, PolycubeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: invalid config: {source}")]
    Config {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
    #[error("{path}: {source}")]
    Shape {
        path: PathBuf,
        #[source]
        source: LatticeError,
    },
    #[error("{path}: {message}")]
    Iamond { path: PathBuf, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polycube(#[from] PolycubeError),
    #[error(transparent)]
    Model(#[from] ModelParseError),
    #[error("invalid solution: {0}")]
    Solution(String),
    #[error("solution does not verify: {0}")]
    Verify(#[from] FoldError),
    #[error(transparent)]
    Search(SearchError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Fixture(String),
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> CliError {
        CliError::Search(e)
    }
}

impl CliError {
    /// Budget exhaustion maps to 2 and a failed verification to 1; anything
    /// else is an input problem.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Search(SearchError::ResourceLimitExceeded(_) | SearchError::Cancelled) => 2,
            CliError::Verify(_) => 1,
            _ => 3,
        }
    }
}
