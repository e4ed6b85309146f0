//! Library side of the `fishburn` binary.

pub mod bfile;
pub mod cache;
pub mod commands;
pub mod config;
pub mod json;

pub use commands::{run, RunOutput, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
pub use config::Cli;
