//! Experiment harness: configuration, training runs, evaluation, game-theory
//! checks and cross-seed reports.

pub mod artifacts;
pub mod commands;
pub mod config;
pub mod error;
pub mod stats;

pub use config::{parse_config, RunConfig};
pub use error::{CliError, Result};
