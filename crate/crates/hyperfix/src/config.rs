//! Flat `key = value` configuration with `#` comments.
//!
//! Later assignments win, so command-line overrides are applied by calling
//! [`Config::set`] after parsing the file. Dashes in keys are read as
//! underscores.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{CliError, Result};

/// Every key any command understands.
pub const KNOWN_KEYS: &[&str] = &[
    "seed",
    "samples",
    "tol",
    "max_iter",
    "yn_variant",
    // mappings and schemes
    "map",
    "rule",
    "slope",
    "intercept",
    "cap",
    "domain_lo",
    "domain_hi",
    "fixed",
    "x1",
    "a",
    "b",
    "c",
    "p",
    "step",
    // spaces
    "space",
    "epsilon",
    "radius",
    // integral problems
    "kernel",
    "m",
    "f_scale",
    "y0",
    "n",
    "quadrature",
    "ball_radius",
    "gap_tol",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(format!("line {}: expected key = value, got {raw:?}", i + 1))
            })?;
            config
                .set(key, value)
                .map_err(|e| CliError::config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(config)
    }

    /// Parses a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("expected key=value, got {assignment:?}")))?;
        self.set(key, value)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = normalize(key);
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::config(format!("unknown key {key:?}")));
        }
        self.entries.insert(key, value.trim().to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::config(format!("cannot parse {key} = {v:?}")))
            })
            .transpose()
    }

    pub fn parsed_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    /// A comma-separated list of numbers.
    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim().parse::<f64>().map_err(|_| {
                            CliError::config(format!("cannot parse {key} entry {s:?}"))
                        })
                    })
                    .collect()
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_overrides() {
        let mut c = Config::parse("# header\nseed = 7\nmax-iter=30 # trailing\n\n").unwrap();
        assert_eq!(c.parsed::<u64>("seed").unwrap(), Some(7));
        assert_eq!(c.parsed::<usize>("max_iter").unwrap(), Some(30));
        c.apply_override("seed=9").unwrap();
        assert_eq!(c.parsed_or::<u64>("seed", 42).unwrap(), 9);
        assert_eq!(c.parsed_or::<f64>("tol", 0.5).unwrap(), 0.5);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(matches!(Config::parse("colour = red"), Err(CliError::Config(_))));
        assert!(matches!(Config::parse("seed"), Err(CliError::Config(_))));
        let c = Config::parse("seed = x").unwrap();
        assert!(c.parsed::<u64>("seed").is_err());
    }

    #[test]
    fn reads_lists() {
        let c = Config::parse("y0 = 0, 1,0.5").unwrap();
        assert_eq!(c.list("y0").unwrap(), Some(vec![0.0, 1.0, 0.5]));
    }
}
