//! Command-line front end: reproducible experiment runs with manifests.

mod commands;
pub mod experiments;
pub mod manifest;
pub mod replicate;

pub use commands::{parse_grid, run, Cli, Command};
