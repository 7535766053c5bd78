//! TOML extraction config files.

use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use phishnet_core::{ConfigError, ExtractionConfig};
use thiserror::Error;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "PHISHNET_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigFileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Syntax { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: ConfigError },
}

/// Parses and validates config text. Missing keys keep their defaults.
pub fn parse_config(text: &str) -> Result<ExtractionConfig, ConfigFileError> {
    parse_at(text, Path::new("<config>"))
}

fn parse_at(text: &str, path: &Path) -> Result<ExtractionConfig, ConfigFileError> {
    let cfg: ExtractionConfig = toml::from_str(text).map_err(|e| ConfigFileError::Syntax {
        path: path.to_path_buf(),
        message: e.message().to_string(),
    })?;
    cfg.validate().map_err(|source| ConfigFileError::Invalid {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(cfg)
}

/// The config path to use: an explicit path wins, then a non-empty `env` value.
pub fn resolve_config_path(explicit: Option<&Path>, env: Option<OsString>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| env.filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// Loads `explicit`, else the file named by `PHISHNET_CONFIG`, else the defaults.
pub fn load_config(explicit: Option<&Path>) -> Result<ExtractionConfig, ConfigFileError> {
    match resolve_config_path(explicit, std::env::var_os(CONFIG_ENV)) {
        None => Ok(ExtractionConfig::default()),
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|source| ConfigFileError::Io {
                path: path.clone(),
                source,
            })?;
            parse_at(&text, &path)
        }
    }
}
