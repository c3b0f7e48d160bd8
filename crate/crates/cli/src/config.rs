//! Flat `key = value` run configuration with `#` comments.

use std::collections::HashSet;
use std::path::Path;

use prom_core::{MaskKind, ProMConfig};

pub const KEYS: [&str; 14] = [
    "alpha",
    "iterations",
    "lr",
    "batch",
    "mc_samples",
    "tau_start",
    "tau_end",
    "explore_fraction",
    "constrain_end_fraction",
    "anneal_exponent",
    "adam_epsilon",
    "seed",
    "mask_kind",
    "num_runs",
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value {value:?} for {key}")]
    InvalidValue { line: usize, key: String, value: String },
    #[error(transparent)]
    Invalid(#[from] prom_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub fn parse_mask_kind(s: &str) -> Option<MaskKind> {
    match s.to_ascii_lowercase().as_str() {
        "full2d" | "2d" => Some(MaskKind::Full2D),
        "lines1d" | "1d" => Some(MaskKind::Lines1D),
        _ => None,
    }
}

pub fn mask_kind_name(kind: MaskKind) -> &'static str {
    match kind {
        MaskKind::Full2D => "full2d",
        MaskKind::Lines1D => "lines1d",
    }
}

/// Parses a run configuration; missing keys keep their defaults and the
/// result is validated.
pub fn parse_config(text: &str) -> Result<ProMConfig, ConfigError> {
    let mut config = ProMConfig::default();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        let bad = || ConfigError::InvalidValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
        };
        let real = || value.parse::<f64>().map_err(|_| bad());
        let int = || value.parse::<usize>().map_err(|_| bad());
        match key {
            "alpha" => config.alpha = real()?,
            "iterations" => config.iterations = int()?,
            "lr" => config.learning_rate = real()?,
            "batch" => config.batch_size = int()?,
            "mc_samples" => config.mc_samples = int()?,
            "tau_start" => config.tau_start = real()?,
            "tau_end" => config.tau_end = real()?,
            "explore_fraction" => config.explore_fraction = real()?,
            "constrain_end_fraction" => config.constrain_end_fraction = real()?,
            "anneal_exponent" => config.anneal_exponent = real()?,
            "adam_epsilon" => config.adam_epsilon = real()?,
            "seed" => config.seed = value.parse().map_err(|_| bad())?,
            "mask_kind" => config.mask_kind = parse_mask_kind(value).ok_or_else(bad)?,
            "num_runs" => config.num_runs = int()?,
            _ => unreachable!("key checked against KEYS"),
        }
    }
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<ProMConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

/// Renders every key; `parse_config(&render_config(c)) == c` for valid
/// configurations.
pub fn render_config(config: &ProMConfig) -> String {
    format!(
        "alpha = {}\niterations = {}\nlr = {}\nbatch = {}\nmc_samples = {}\ntau_start = {}\ntau_end = {}\n\
         explore_fraction = {}\nconstrain_end_fraction = {}\nanneal_exponent = {}\nadam_epsilon = {}\nseed = {}\nmask_kind = {}\n\
         num_runs = {}\n",
        config.alpha,
        config.iterations,
        config.learning_rate,
        config.batch_size,
        config.mc_samples,
        config.tau_start,
        config.tau_end,
        config.explore_fraction,
        config.constrain_end_fraction,
        config.anneal_exponent,
        config.adam_epsilon,
        config.seed,
        mask_kind_name(config.mask_kind),
        config.num_runs,
    )
}
