//! Level generators and the curriculum loops that drive students.

mod config;
mod generator;
mod run;

pub use config::{Algorithm, DcdConfig, EvalConfig, GeneratorConfig};
pub use generator::{estimate_regret_paired, DesignRecord, DesignTrajectory, GeneratorPolicy};
pub use run::{run_dcd, run_dcd_with, Counters, DcdRun, EpisodeKind, EpisodeSummary, MetricsRow, RunReport};
