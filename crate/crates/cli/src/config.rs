//! TOML experiment files. Every key is optional and every key can be
//! overridden by the flag of the same name.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

use crate::InputError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub xi: Option<String>,
    pub basepoint: Option<String>,
    pub window: Option<WindowSpec>,
    pub strict_boundary: Option<bool>,
    pub kmin: Option<i64>,
    pub kmax: Option<i64>,
    pub colored: Option<bool>,
    pub nmax: Option<u64>,
    pub trace_points: Option<usize>,
    pub pattern: Option<String>,
    pub delta: Option<String>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
    pub witness_points: Option<usize>,
    pub tolerance: Option<String>,
    pub out: Option<PathBuf>,
}

/// A window as one string or as a list of interval strings.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum WindowSpec {
    Text(String),
    Intervals(Vec<String>),
}

impl WindowSpec {
    pub fn text(&self) -> String {
        match self {
            WindowSpec::Text(s) => s.clone(),
            WindowSpec::Intervals(v) => v.join(" "),
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())).into())
    }
}
