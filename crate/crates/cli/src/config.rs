//! Flat `key = value` config files, merged under CLI flags.
//!
//! Precedence: CLI flag > config file > built-in default. Boolean flags can
//! only be switched on, by either source.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub struct FileConfig {
    entries: HashMap<String, String>,
}

impl FileConfig {
    pub fn empty() -> Self {
        Self {
            entries: HashMap::new(),
        }
    }

    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::empty());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "{}: line {}: expected `key = value`, got {line:?}",
                    path.display(),
                    idx + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::Usage(format!("config key {key}: cannot parse value {raw:?}"))
            }),
        }
    }

    pub fn get_string(&self, key: &str) -> Option<String> {
        self.entries.get(key).cloned()
    }

    pub fn get_path(&self, key: &str) -> Option<PathBuf> {
        self.entries.get(key).map(PathBuf::from)
    }

    pub fn get_flag(&self, key: &str) -> CliResult<bool> {
        match self.entries.get(key).map(|s| s.as_str()) {
            None => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(other) => Err(CliError::Usage(format!(
                "config key {key}: expected a boolean, got {other:?}"
            ))),
        }
    }
}

/// Retained-count choice: `auto` means `floor(n / ln n)` capped at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSizeChoice {
    Auto,
    Fixed(usize),
}

impl ModelSizeChoice {
    pub fn parse(s: &str) -> CliResult<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(ModelSizeChoice::Auto);
        }
        s.parse::<usize>().map(ModelSizeChoice::Fixed).map_err(|_| {
            CliError::Usage(format!("d must be \"auto\" or a positive integer, got {s:?}"))
        })
    }
}

pub fn parse_methods(s: &str) -> CliResult<Vec<rdc_core::Method>> {
    let mut methods = Vec::new();
    for part in s.split(',') {
        if part.trim().is_empty() {
            continue;
        }
        let m = rdc_core::Method::parse(part).map_err(CliError::from)?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(CliError::Usage("no method named".into()));
    }
    Ok(methods)
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
