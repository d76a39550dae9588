//! Flat `key = value` configuration merged with command-line overrides.
//!
//! Lines starting with `#` are comments; values may be wrapped in double
//! quotes. Keys not known to the subcommand are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use blocklab::{Error, Grid, Params, Result};

pub const SEED_ENV: &str = "BLOCKLAB_SEED";

#[derive(Debug, Default)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

fn parse_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return config_err(format!("line {}: expected key = value, got {line:?}", no + 1));
        };
        let k = k.trim();
        let mut v = v.trim();
        if v.len() >= 2 && v.starts_with('"') && v.ends_with('"') {
            v = &v[1..v.len() - 1];
        }
        if k.is_empty() {
            return config_err(format!("line {}: empty key", no + 1));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return config_err(format!("line {}: duplicate key {k:?}", no + 1));
        }
    }
    Ok(map)
}

impl Settings {
    /// Reads `file` (if any), rejects keys outside `allowed`, then applies
    /// the command-line values on top.
    pub fn load(file: Option<&Path>, allowed: &[&str], flags: Vec<(&str, Option<String>)>) -> Result<Self> {
        let mut map = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
                parse_file(&text)?
            }
            None => BTreeMap::new(),
        };
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return config_err(format!("unknown config key {k:?}; allowed keys: {}", allowed.join(", ")));
        }
        for (k, v) in flags {
            if let Some(v) = v {
                map.insert(k.to_string(), v);
            }
        }
        Ok(Self { map })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Config(format!("missing required key {key:?}")))
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        self.get(key).unwrap_or(default).to_string()
    }

    pub fn f64_or(&self, key: &str, default: Option<f64>) -> Result<f64> {
        match self.get(key) {
            Some(v) => parse_f64(key, v),
            None => default.ok_or_else(|| Error::Config(format!("missing required key {key:?}"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: Option<usize>) -> Result<usize> {
        match self.get(key) {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{key} = {v:?} is not a non-negative integer"))),
            None => default.ok_or_else(|| Error::Config(format!("missing required key {key:?}"))),
        }
    }

    pub fn flag(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => config_err(format!("{key} = {v:?} is not a boolean")),
        }
    }

    pub fn params(&self, default_n: usize) -> Result<Params> {
        let n = self.usize_or("n", Some(default_n))?;
        let p = self.f64_or("p", None)?;
        let s = self.f64_or("s", None)?;
        let alpha = self.f64_or("alpha", None)?;
        Params::new(n, p, s, alpha).map_err(as_config)
    }

    pub fn grid(&self, n: usize, default_size: usize, default_extent: f64) -> Result<Grid> {
        let size = self.usize_or("N", Some(default_size))?;
        let extent = self.f64_or("L", Some(default_extent))?;
        Grid::new(n, extent, size).map_err(as_config)
    }

    /// `seed` key, else the environment fallback, else 0.
    pub fn seed(&self) -> Result<u64> {
        let from_env = std::env::var(SEED_ENV).ok();
        let (src, v) = match (self.get("seed"), from_env.as_deref()) {
            (Some(v), _) => ("seed", v),
            (None, Some(v)) => (SEED_ENV, v),
            (None, None) => return Ok(0),
        };
        v.trim().parse().map_err(|_| Error::Config(format!("{src} = {v:?} is not an unsigned integer")))
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    match v.trim() {
        "inf" | "infinity" => Ok(f64::INFINITY),
        t => t.parse().map_err(|_| Error::Config(format!("{key} = {v:?} is not a number"))),
    }
}

/// Bad values in the configuration are configuration errors, whatever the
/// library calls them.
pub fn as_config(e: Error) -> Error {
    match e {
        Error::Domain(m) | Error::Usage(m) => Error::Config(m),
        other => other,
    }
}
