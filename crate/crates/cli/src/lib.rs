//! Command-line front end: configuration, subcommands and tabular output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{main_with, Cli, Command};
pub use config::{Format, RunConfig};
pub use error::CliError;
