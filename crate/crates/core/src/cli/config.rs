//! Flat `key = value` run configuration.
//!
//! A config file holds one assignment per line; `#` starts a comment, blank
//! lines are ignored. Every key must be one of [`KEYS`]. Command-line
//! overrides are applied after the file, in order.

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ModelError;
use crate::model::{ModelParams, Param, RegimeInterpretation, Validation};
use crate::oracle::SearchBox;

/// Every key a configuration may set.
pub const KEYS: &[&str] = &[
    "alpha",
    "beta",
    "lambda",
    "shock_bound",
    "congress_ideal",
    "agency_ideal",
    "validation",
    "mode",
    "seed",
    "draws",
    "format",
    "out",
    "p0_min",
    "p0_max",
    "d_max",
    "coarse_points",
    "refine_rounds",
    "quadrature_intervals",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("configuration key `{0}` is set more than once")]
    Duplicate(String),
    #[error("invalid value for `{key}`: {reason}")]
    Value { key: String, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

impl FromStr for ValidationArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Self(Validation::Strict)),
            "permissive" => Ok(Self(Validation::Permissive)),
            other => Err(format!("unknown validation `{other}` (expected strict or permissive)")),
        }
    }
}

struct ValidationArg(Validation);

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub validation: Validation,
    pub mode: RegimeInterpretation,
    pub search: SearchBox,
    pub seed: u64,
    pub draws: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

/// Parameters used for any primitive the configuration leaves unset.
pub const DEFAULT_PARAMS: ModelParams = ModelParams {
    alpha: 1.0,
    beta: 1.0,
    lambda_weight: 0.5,
    shock_bound: 1.0,
    congress_ideal: 0.5,
    agency_ideal: 1.0,
};

/// Splits config text into `(key, value)` pairs, rejecting malformed lines,
/// unknown keys and repeated keys.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = parse_assignment(line).ok_or_else(|| ConfigError::Syntax {
            line: i + 1,
            text: raw.trim().to_string(),
        })?;
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError::Duplicate(key));
        }
        entries.push((key, value));
    }
    Ok(entries)
}

/// Parses one `key=value` (or `key = value`) assignment; the key is checked
/// against [`KEYS`] by [`RunConfig::from_entries`].
pub fn parse_assignment(text: &str) -> Option<(String, String)> {
    let (key, value) = text.split_once('=')?;
    let (key, value) = (key.trim(), value.trim());
    if key.is_empty() || value.is_empty() {
        return None;
    }
    Some((key.to_string(), value.to_string()))
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| ConfigError::Value {
        key: key.to_string(),
        reason: format!("`{value}`: {e}"),
    })
}

impl RunConfig {
    /// Builds a configuration from assignments applied in order (later ones
    /// win). Returns the config and any permissive-mode warnings.
    pub fn from_entries(entries: &[(String, String)]) -> Result<(Self, Vec<String>), ConfigError> {
        let mut params = DEFAULT_PARAMS;
        let mut validation = Validation::Strict;
        let mut mode = RegimeInterpretation::default();
        let mut seed = 42u64;
        let mut draws = 10_000usize;
        let mut output_format = OutputFormat::default();
        let mut output_path = None;
        let mut search_overrides: Vec<(&str, &str)> = Vec::new();

        for (key, value) in entries {
            let (key, value) = (key.as_str(), value.as_str());
            match key {
                "alpha" | "beta" | "lambda" | "shock_bound" | "congress_ideal" | "agency_ideal" => {
                    let param: Param = key.parse().expect("listed parameter key");
                    params = params.with(param, parse(key, value)?);
                }
                "validation" => validation = parse::<ValidationArg>(key, value)?.0,
                "mode" => mode = parse(key, value)?,
                "seed" => seed = parse(key, value)?,
                "draws" => draws = parse(key, value)?,
                "format" => output_format = parse(key, value)?,
                "out" => output_path = Some(PathBuf::from(value)),
                "p0_min" | "p0_max" | "d_max" | "coarse_points" | "refine_rounds" | "quadrature_intervals" => {
                    search_overrides.push((key, value))
                }
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }

        let warnings = params.validate(validation)?;
        if draws == 0 {
            return Err(ConfigError::Value {
                key: "draws".into(),
                reason: "must be at least 1".into(),
            });
        }
        let mut search = SearchBox::for_params(&params);
        for (key, value) in search_overrides {
            match key {
                "p0_min" => search.p0_min = parse(key, value)?,
                "p0_max" => search.p0_max = parse(key, value)?,
                "d_max" => search.d_max = parse(key, value)?,
                "coarse_points" => search.coarse_points = parse(key, value)?,
                "refine_rounds" => search.refine_rounds = parse(key, value)?,
                "quadrature_intervals" => search.quadrature_intervals = parse(key, value)?,
                _ => unreachable!("search keys are filtered above"),
            }
        }
        search.validate()?;

        Ok((
            Self {
                params,
                validation,
                mode,
                search,
                seed,
                draws,
                output_format,
                output_path,
            },
            warnings,
        ))
    }

    pub fn from_text(text: &str) -> Result<(Self, Vec<String>), ConfigError> {
        Self::from_entries(&parse_config_text(text)?)
    }
}
