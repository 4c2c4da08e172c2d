//! Command-line front end for `afm-core`: benchmark tables, spectra, property
//! suites and coefficient fits, rendered as CSV, JSON or aligned text.

pub mod app;
pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod fit;
pub mod fixtures;
pub mod output;
pub mod table;

pub use error::CliError;
