//! The `.pfl` text format and the `pfl` command line.

pub mod app;
pub mod commands;
pub mod dsl;
pub mod error;

pub use error::CliError;
