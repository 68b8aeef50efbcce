pub mod integral;
pub mod properties;
pub mod race;
pub mod space_check;
pub mod table1;

use std::fmt::Write as _;

use hyperfix_core::mappings::{by_name, ScalarMap, ScalarRule};
use hyperfix_core::YnVariant;

use crate::config::Config;
use crate::error::{exit, CliError, Result};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

/// Artifacts and verdict of one command. The first file is the main
/// artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub summary: String,
    pub files: Vec<OutputFile>,
    pub passed: bool,
}

impl CommandOutput {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            exit::OK
        } else {
            exit::CHECK_FAILED
        }
    }

    pub fn file(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.contents.as_str())
    }
}

/// Summary text with a running pass/fail tally.
#[derive(Debug, Default)]
pub(crate) struct Summary {
    text: String,
    passed: bool,
}

impl Summary {
    pub fn new() -> Self {
        Self {
            text: String::new(),
            passed: true,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl AsRef<str>) {
        let _ = writeln!(
            self.text,
            "check {name}: {} ({})",
            if ok { "pass" } else { "FAIL" },
            detail.as_ref()
        );
        self.passed &= ok;
    }

    pub fn finish(self, files: Vec<OutputFile>) -> CommandOutput {
        CommandOutput {
            summary: self.text,
            files,
            passed: self.passed,
        }
    }
}

pub(crate) fn file(name: &str, contents: String) -> OutputFile {
    OutputFile {
        name: name.to_string(),
        contents,
    }
}

pub(crate) fn seed(config: &Config) -> Result<u64> {
    config.parsed_or("seed", DEFAULT_SEED)
}

pub(crate) fn yn_variant(config: &Config) -> Result<YnVariant> {
    match config.get("yn_variant").unwrap_or("tz") {
        "tz" => Ok(YnVariant::Tz),
        "tx" => Ok(YnVariant::Tx),
        other => Err(CliError::config(format!("yn_variant must be tz or tx, got {other:?}"))),
    }
}

/// `(a, b, c)`, defaulting to 0.85, 0.65, 0.45.
pub(crate) fn coefficients(config: &Config) -> Result<(f64, f64, f64)> {
    let get = |k: &str, d: f64| -> Result<f64> {
        let v = config.parsed_or(k, d)?;
        if v > 0.0 && v < 1.0 {
            Ok(v)
        } else {
            Err(CliError::config(format!("{k} = {v} outside (0, 1)")))
        }
    };
    Ok((get("a", 0.85)?, get("b", 0.65)?, get("c", 0.45)?))
}

/// A catalog map by name, or `map = custom` assembled from `rule`
/// (`affine` or `capped`), `slope`, `intercept` / `cap`, `domain_lo`,
/// `domain_hi` and an optional `fixed` list.
pub(crate) fn resolve_map(config: &Config) -> Result<ScalarMap> {
    let name = config.get("map").unwrap_or("step");
    if name != "custom" {
        return by_name(name).ok_or_else(|| CliError::config(format!("unknown map {name:?}")));
    }
    let slope = config.parsed_or("slope", 1.0)?;
    let rule = match config.get("rule").unwrap_or("affine") {
        "affine" => ScalarRule::Affine {
            slope,
            intercept: config.parsed_or("intercept", 0.0)?,
        },
        "capped" => ScalarRule::Capped {
            slope,
            cap: config.parsed_or("cap", 1.0)?,
        },
        other => return Err(CliError::config(format!("unknown rule {other:?}"))),
    };
    let domain = (
        config.parsed_or("domain_lo", 0.0)?,
        config.parsed_or("domain_hi", 1.0)?,
    );
    if !(domain.0 < domain.1) {
        return Err(CliError::config("domain_lo must be below domain_hi"));
    }
    let map = ScalarMap::new("custom", domain, rule);
    Ok(match config.list("fixed")? {
        Some(ps) => map.with_fixed(&ps),
        None => map,
    })
}
