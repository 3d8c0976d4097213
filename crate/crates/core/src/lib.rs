//! Maze curriculum laboratory: environment, tabular student, level replay,
//! teachers and evaluation metrics.

pub mod agent;
pub mod curation;
pub mod error;
pub mod maze;
pub mod metrics;
pub mod rng;
pub mod teachers;

pub use error::{CoreError, Result};
