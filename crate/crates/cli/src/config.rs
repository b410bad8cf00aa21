//! TOML experiment configs.

use std::path::{Path, PathBuf};

use anyhow::Context;
use cbeta::harness::{CltConfig, LineFunction, VerifyConfig};
use serde::de::DeserializeOwned;
use serde::Deserialize;

pub fn load<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpandConfig {
    pub beta: f64,
    /// Particle counts to evaluate at.
    pub n_list: Vec<usize>,
    /// Largest partition weight kept in the series.
    #[serde(default = "default_degree")]
    pub degree: usize,
    /// Fourier coefficients as `[j, re, im]` triples.
    pub function: Vec<(i64, f64, f64)>,
    /// JSON output; standard output when absent.
    pub output: Option<PathBuf>,
}

fn default_degree() -> usize {
    10
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CltTestConfig {
    pub beta: f64,
    pub r_list: Vec<f64>,
    pub paths: usize,
    pub seed: u64,
    pub function: LineFunction,
    /// Rescale `function` to unit limit variance first.
    #[serde(default)]
    pub normalize: bool,
    /// Optional gate on the KS distance at the largest scale.
    pub max_ks: Option<f64>,
    #[serde(default)]
    pub clt: CltConfig,
    pub output: CltOutput,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CltOutput {
    /// One row per `(R, statistic)`.
    pub csv: PathBuf,
    pub json: PathBuf,
    /// Wall-clock sidecar, kept apart so the record stays reproducible.
    pub timing: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyTomlConfig {
    pub beta: f64,
    pub n_list: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub function: LineFunction,
    #[serde(default)]
    pub verify: VerifyConfig,
    pub output: Option<PathBuf>,
}
