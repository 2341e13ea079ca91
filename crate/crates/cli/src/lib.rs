//! Command-line front end for the interferometer phase engine: JSON-configured
//! deterministic runs with JSON reports on stdout and CSV artifacts on request.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use commands::{run_subcommand, Command};
pub use config::{apply_override, parse_config, RawConfig, RunConfig};
pub use error::{CliError, ErrorKind};
pub use report::Report;
