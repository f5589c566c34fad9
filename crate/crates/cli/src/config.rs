//! Seed-config files and argument parsing helpers.
//!
//! A seed config is a JSON object whose keys mirror the long CLI flags
//! (dashes become underscores). Explicit command-line flags take precedence
//! over values from the file.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use fluxlab_core::{State, SystemKind};

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedConfig {
    pub system: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub eps1: Option<f64>,
    pub eps2: Option<f64>,
    pub gamma: Option<f64>,
    pub format: Option<String>,
    pub t: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub n: Option<usize>,
    pub xi: Option<String>,
    pub schedule: Option<String>,
    pub path: Option<String>,
    pub sample_xi: Option<f64>,
    pub tests: Option<String>,
}

impl SeedConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(SeedConfig::default()),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| {
                    CliError::Usage(format!("cannot read seed config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("invalid seed config {}: {e}", p.display()))
                })
            }
        }
    }
}

pub fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required option --{flag}")))
}

pub fn parse_state(text: &str, flag: &str) -> Result<State, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!(
            "--{flag} expects RHO,U, got {text:?}"
        )));
    }
    let rho = parts[0].trim().parse::<f64>();
    let u = parts[1].trim().parse::<f64>();
    match (rho, u) {
        (Ok(rho), Ok(u)) => Ok(State::new(rho, u)),
        _ => Err(CliError::Usage(format!(
            "--{flag} expects RHO,U, got {text:?}"
        ))),
    }
}

pub fn parse_system(text: &str) -> Result<SystemKind, CliError> {
    match text {
        "zp" => Ok(SystemKind::ZeroPressure),
        "pt" => Ok(SystemKind::PerturbedTransport),
        "ise" => Ok(SystemKind::Isentropic),
        other => Err(CliError::Usage(format!(
            "--system must be one of zp, pt, ise; got {other:?}"
        ))),
    }
}

pub fn parse_f64_list(text: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("--{flag}: cannot parse {s:?} as a number")))
        })
        .collect()
}
