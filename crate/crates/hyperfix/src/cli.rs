use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, CommandOutput};
use crate::config::Config;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum YnArg {
    Tz,
    Tx,
}

/// Fixed-point iteration laboratory.
///
/// Without `--out` the command's main artifact goes to stdout and the
/// summary to stderr; with `--out DIR` every artifact is written into DIR
/// and the summary goes to stdout.
#[derive(Debug, Parser)]
#[command(name = "hyperfix", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub yn_variant: Option<YnArg>,
    /// Extra `key=value` setting; repeatable and applied last.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Both schemes on the step map from 0.9, twenty rows.
    Table1,
    /// Mann against the three-step scheme on one map.
    Race { map: Option<String> },
    /// Class checks for one map.
    Properties { map: Option<String> },
    /// Axioms and convexity modulus of a space: euclidean:D, poincare, l2grid:N.
    SpaceCheck { space: Option<String> },
    /// Solve the discretized integral equation by Picard and by the scheme.
    Integral,
}

/// The configuration file, then the flags, then `--set` overrides.
pub fn load_config(cli: &Cli) -> Result<Config> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::config(format!("cannot read {}: {e}", path.display()))
            })?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.set("seed", &seed.to_string())?;
    }
    if let Some(samples) = cli.samples {
        config.set("samples", &samples.to_string())?;
    }
    if let Some(tol) = cli.tol {
        config.set("tol", &tol.to_string())?;
    }
    if let Some(max_iter) = cli.max_iter {
        config.set("max_iter", &max_iter.to_string())?;
    }
    if let Some(v) = cli.yn_variant {
        config.set("yn_variant", if v == YnArg::Tx { "tx" } else { "tz" })?;
    }
    match &cli.command {
        Command::Race { map: Some(m) } | Command::Properties { map: Some(m) } => {
            config.set("map", m)?
        }
        Command::SpaceCheck { space: Some(s) } => config.set("space", s)?,
        _ => {}
    }
    for o in &cli.overrides {
        config.apply_override(o)?;
    }
    Ok(config)
}

pub fn run(cli: &Cli) -> Result<CommandOutput> {
    let config = load_config(cli)?;
    match cli.command {
        Command::Table1 => commands::table1::run(&config),
        Command::Race { .. } => commands::race::run(&config),
        Command::Properties { .. } => commands::properties::run(&config),
        Command::SpaceCheck { .. } => commands::space_check::run(&config),
        Command::Integral => commands::integral::run(&config),
    }
}

pub fn write_outputs(output: &CommandOutput, dir: &Path) -> Result<()> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    for f in &output.files {
        let path = dir.join(&f.name);
        fs::write(&path, &f.contents).map_err(io(&path))?;
    }
    Ok(())
}
