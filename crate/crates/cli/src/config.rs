//! Settings shared by every verb, from flags, a TOML file and the
//! environment.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;
use crate::formats::read;

/// Environment variable naming the fixtures directory.
pub const FIXTURES_ENV: &str = "FOLD_FIXTURES";

/// Keys accepted in a config file; all optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub model: Option<String>,
    pub jobs: Option<usize>,
    pub nodes: Option<u64>,
    pub time_limit: Option<u64>,
    pub fixtures: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        toml::from_str(&read(path)?).map_err(|source| CliError::Config { path: path.to_path_buf(), source })
    }
}

/// The directory to read fixtures from: the environment first, then the
/// config file. `None` selects the copies built into the library.
pub fn fixtures_dir(cfg: &ConfigFile) -> Option<PathBuf> {
    std::env::var_os(FIXTURES_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or_else(|| cfg.fixtures.clone())
}
