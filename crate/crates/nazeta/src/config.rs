//! Flat `key = value` configuration files.

use std::path::Path;

use nazeta_core::NumericsConfig;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    abs_tol: Option<f64>,
    series_cutoff_margin: Option<f64>,
    quadrature_depth: Option<u32>,
    quadrature_order: Option<usize>,
    quadrature_tol: Option<f64>,
    pole_guard_radius: Option<f64>,
    vector_budget: Option<usize>,
    flag_budget: Option<usize>,
    sl3_height: Option<u32>,
    unipotent_nodes: Option<usize>,
}

/// Parses configuration text; missing keys keep their defaults.
pub fn parse_config(text: &str) -> Result<NumericsConfig, ConfigError> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map_or(1, |span| text[..span.start.min(text.len())].matches('\n').count() + 1),
        message: e.message().trim().to_string(),
    })?;
    let mut cfg = NumericsConfig::default();
    macro_rules! apply {
        ($($field:ident),*) => {
            $(if let Some(v) = file.$field { cfg.$field = v; })*
        };
    }
    apply!(
        abs_tol,
        series_cutoff_margin,
        quadrature_depth,
        quadrature_order,
        quadrature_tol,
        pole_guard_radius,
        vector_budget,
        flag_budget,
        sl3_height,
        unipotent_nodes
    );
    cfg.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<NumericsConfig, ConfigError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    parse_config(&text)
}
