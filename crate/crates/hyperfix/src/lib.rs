//! File formats, configuration and commands of the `hyperfix` binary.
//!
//! Every command returns a [`CommandOutput`] in memory; the binary decides
//! where it goes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use cli::{load_config, run, write_outputs, Cli, Command, YnArg};
pub use commands::{CommandOutput, OutputFile};
pub use config::Config;
pub use error::{exit, CliError, Result};
