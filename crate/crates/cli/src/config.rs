//! Optional JSON config file merged under explicit flags (flags win).

use std::path::PathBuf;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub d: Option<u32>,
    pub alpha: Option<f64>,
    pub alpha_list: Option<Vec<f64>>,
    pub degree: Option<i64>,
    pub cutoff: Option<u32>,
    pub samples: Option<usize>,
    pub pairs: Option<usize>,
    pub support: Option<u64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub n0: Option<f64>,
    pub format: Option<String>,
    pub exact: Option<bool>,
}

pub fn load(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad config {}: {e}", p.display())))
        }
    }
}

/// Flag value, else config value, else error naming the missing flag.
pub fn require<T: Copy>(flag: Option<T>, cfg: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(cfg)
        .ok_or_else(|| CliError::Input(format!("missing required value --{name}")))
}

/// Flag value, else config value, else the built-in default.
pub fn resolve<T: Copy>(flag: Option<T>, cfg: Option<T>, default: T) -> T {
    flag.or(cfg).unwrap_or(default)
}

/// Validates a possibly negative degree flag.
pub fn degree_u32(value: i64) -> Result<u32, CliError> {
    if !(0..=1_000_000).contains(&value) {
        return Err(CliError::Input(format!(
            "degree must lie in 0..=1000000, got {value}"
        )));
    }
    Ok(value as u32)
}
