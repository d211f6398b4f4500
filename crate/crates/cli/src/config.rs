use std::path::{Path, PathBuf};

use epiflow::dsl::DEFAULT_DEPTH_LIMIT;
use serde::Deserialize;
use thiserror::Error;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "EPF_CONFIG";

pub const DEFAULT_MAGNITUDE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    /// Print the walk for every `inspect`.
    pub trace: bool,
    /// Largest magnitude accepted by unary encodings.
    pub magnitude_cap: u64,
    /// Deepest lattice nesting the parser accepts.
    pub depth_limit: usize,
    /// Invariant registry file. Relative paths resolve against the config
    /// file's directory.
    pub registry_path: Option<PathBuf>,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            trace: false,
            magnitude_cap: DEFAULT_MAGNITUDE_CAP,
            depth_limit: DEFAULT_DEPTH_LIMIT,
            registry_path: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

impl CliConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        let cfg: CliConfig = toml::from_str(text).map_err(|e| e.message().to_string())?;
        if cfg.magnitude_cap == 0 {
            return Err("magnitude_cap must be positive".into());
        }
        if cfg.depth_limit == 0 {
            return Err("depth_limit must be positive".into());
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: shown.clone(),
            source,
        })?;
        let mut cfg = Self::from_toml(&text).map_err(|message| ConfigError::Invalid {
            path: shown,
            message,
        })?;
        if let Some(reg) = &cfg.registry_path {
            if reg.is_relative() {
                if let Some(dir) = path.parent() {
                    cfg.registry_path = Some(dir.join(reg));
                }
            }
        }
        Ok(cfg)
    }
}
