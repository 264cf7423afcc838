//! Command-line front end for the `bathent` library: configuration parsing,
//! evolution tables, creation reports and example-bath scans.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod inputs;
pub mod scan;
pub mod svg;
pub mod table;

pub use cli::{run, Cli};
pub use error::{CliError, ParseError};
