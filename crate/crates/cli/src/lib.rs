//! Library half of the `jacobi-flow` command-line tool.
//!
//! The binary only parses arguments; everything it prints is produced here,
//! which keeps the commands testable without spawning processes.

pub mod commands;
pub mod config;
pub mod error;
pub mod suite;
pub mod table;

pub use error::{CliError, CliResult};
