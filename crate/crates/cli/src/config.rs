use std::path::{Path, PathBuf};

use clap::ValueEnum;
use orbitobs::{Factorer, SearchConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub prime_budget: u64,
    pub factor_effort: u64,
    pub coordinate_bit_cap: u64,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        let search = SearchConfig::default();
        RunConfig {
            prime_budget: search.prime_budget,
            factor_effort: Factorer::default().effort,
            coordinate_bit_cap: search.coordinate_bit_cap,
            cache_path: None,
            output_format: OutputFormat::Json,
        }
    }
}

/// Command-line overrides, applied last.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub prime_budget: Option<u64>,
    pub factor_effort: Option<u64>,
    pub coordinate_bit_cap: Option<u64>,
    pub cache_path: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
}

impl RunConfig {
    /// Defaults, then the config file, then `ORBITOBS_CACHE`, then flags.
    pub fn resolve(file: Option<&Path>, env_cache: Option<PathBuf>, o: Overrides) -> Result<Self, CliError> {
        let mut cfg = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
                toml::from_str(&text)
                    .map_err(|e| CliError::Input(format!("bad config {}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        if env_cache.is_some() {
            cfg.cache_path = env_cache;
        }
        cfg.prime_budget = o.prime_budget.unwrap_or(cfg.prime_budget);
        cfg.factor_effort = o.factor_effort.unwrap_or(cfg.factor_effort);
        cfg.coordinate_bit_cap = o.coordinate_bit_cap.unwrap_or(cfg.coordinate_bit_cap);
        cfg.output_format = o.output_format.unwrap_or(cfg.output_format);
        if o.cache_path.is_some() {
            cfg.cache_path = o.cache_path;
        }
        if cfg.prime_budget == 0 || cfg.factor_effort == 0 || cfg.coordinate_bit_cap == 0 {
            return Err(CliError::Input("budgets must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            prime_budget: self.prime_budget,
            coordinate_bit_cap: self.coordinate_bit_cap,
            ..SearchConfig::default()
        }
    }

    pub fn factorer(&self) -> Factorer {
        Factorer {
            effort: self.factor_effort,
            ..Factorer::default()
        }
    }
}
