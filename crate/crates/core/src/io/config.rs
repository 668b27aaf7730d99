//! Flat `key = value` run configuration.
//!
//! One assignment per line. `#` starts a comment that runs to the end of
//! the line; blank lines are ignored. Keys are the 13 rate names plus
//! `eligible_population`, `t_end`, `dt` and `scenario`. Unknown or repeated
//! keys are rejected. Missing rates and a missing `eligible_population`
//! default to 0 with a warning; a missing `dt` defaults to 0.01; `t_end` is
//! required.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::model::{validate, ModelParameters, SimulationConfig};
use crate::scenario::BuiltinScenario;

const SIM_KEYS: [&str; 4] = ["eligible_population", "t_end", "dt", "scenario"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParameters,
    pub simulation: SimulationConfig,
    pub scenario: Option<BuiltinScenario>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl ConfigError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        ConfigError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with_warnings(text).map(|(cfg, _)| cfg)
}

/// Parses and validates a configuration, also returning a warning for every
/// defaulted key.
pub fn parse_config_with_warnings(text: &str) -> Result<(RunConfig, Vec<String>), ConfigError> {
    let mut values: HashMap<&str, (usize, &str)> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::parse(line_no, format!("expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !ModelParameters::FIELD_NAMES.contains(&key) && !SIM_KEYS.contains(&key) {
            return Err(ConfigError::parse(line_no, format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(ConfigError::parse(
                line_no,
                format!("empty value for `{key}`"),
            ));
        }
        if let Some((first, _)) = values.insert(key, (line_no, value)) {
            return Err(ConfigError::parse(
                line_no,
                format!("duplicate key `{key}` (first set on line {first})"),
            ));
        }
    }

    let number = |key: &'static str| -> Result<Option<f64>, ConfigError> {
        match values.get(key) {
            None => Ok(None),
            Some(&(line, v)) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| ConfigError::parse(line, format!("`{key}`: `{v}` is not a number"))),
        }
    };

    let mut warnings = Vec::new();
    let mut params = ModelParameters::default();
    for key in ModelParameters::FIELD_NAMES {
        match number(key)? {
            Some(v) => params.set(key, v)?,
            None => warnings.push(format!("`{key}` not set, defaulting to 0")),
        }
    }
    validate(&params)?;

    let eligible_population = number("eligible_population")?.unwrap_or_else(|| {
        warnings.push("`eligible_population` not set, defaulting to 0".to_string());
        0.0
    });
    let t_end = number("t_end")?.ok_or(ConfigError::Missing("t_end"))?;
    let dt = number("dt")?.unwrap_or(SimulationConfig::DEFAULT_DT);
    let simulation = SimulationConfig::new(eligible_population, t_end, dt);
    simulation.validate()?;

    let scenario = match values.get("scenario") {
        None => None,
        Some(&(line, name)) => Some(
            BuiltinScenario::from_name(name)
                .ok_or_else(|| ConfigError::parse(line, format!("unknown scenario `{name}`")))?,
        ),
    };

    Ok((
        RunConfig {
            params,
            simulation,
            scenario,
        },
        warnings,
    ))
}

/// Writes every key explicitly, in canonical order.
pub fn render_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    for (key, value) in ModelParameters::FIELD_NAMES
        .iter()
        .zip(cfg.params.to_array())
    {
        let _ = writeln!(out, "{key} = {value:?}");
    }
    let _ = writeln!(
        out,
        "eligible_population = {:?}",
        cfg.simulation.eligible_population
    );
    let _ = writeln!(out, "t_end = {:?}", cfg.simulation.t_end);
    let _ = writeln!(out, "dt = {:?}", cfg.simulation.dt);
    if let Some(s) = cfg.scenario {
        let _ = writeln!(out, "scenario = {s}");
    }
    out
}
