//! Command-line experiments, configuration and file formats for `lgp-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod oracle;
pub mod svg;

pub use config::{Overrides, RunConfig};
pub use error::{CliError, CliResult};
