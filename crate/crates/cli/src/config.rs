//! The run configuration: a JSON file, overridden field by field by flags.

use std::path::Path;

use anyhow::{Context, Result};
use qha_core::ModelParams;
use serde::{Deserialize, Serialize};

pub const DEFAULT_N: u32 = 1;
pub const DEFAULT_MODULUS: u32 = 9;
pub const DEFAULT_SEED: u64 = 42;

/// Every field is optional in the file; unset fields fall back to flags, then defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<String>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fields set in `over` win.
    pub fn overridden_by(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            n: over.n.or(self.n),
            modulus: over.modulus.or(self.modulus),
            seed: over.seed.or(self.seed),
            tol: over.tol.or(self.tol),
            suites: over.suites.or(self.suites),
        }
    }

    /// Model parameters if either coordinate was given explicitly.
    pub fn explicit_params(&self) -> Result<Option<ModelParams>> {
        if self.n.is_none() && self.modulus.is_none() {
            return Ok(None);
        }
        Ok(Some(self.params()?))
    }

    pub fn params(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(self.n.unwrap_or(DEFAULT_N), self.modulus.unwrap_or(DEFAULT_MODULUS))?)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// The fully resolved configuration embedded in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: u32,
    #[serde(rename = "N")]
    pub modulus: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub suites: Vec<String>,
}

impl RunConfig {
    pub fn resolve(file: &ConfigFile, default_suites: &[&str]) -> Result<Self> {
        let p = file.params()?;
        if let Some(t) = file.tol {
            anyhow::ensure!(t > 0.0 && t.is_finite(), "tolerance must be positive, got {t}");
        }
        let suites = match &file.suites {
            Some(s) if !s.is_empty() => s.clone(),
            _ => default_suites.iter().map(|s| s.to_string()).collect(),
        };
        Ok(RunConfig { n: p.n(), modulus: p.modulus(), seed: file.seed(), tol: file.tol, suites })
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.n, self.modulus).expect("validated on resolve")
    }
}
