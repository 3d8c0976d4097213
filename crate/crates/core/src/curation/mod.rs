//! Prioritized level replay: scoring functions, the level buffer and its
//! replay distribution.

mod buffer;
mod config;
mod scoring;
mod snapshot;

pub use buffer::{sample_decision, BufferEntry, LevelBuffer, ReplayDecision, UpdateOutcome};
pub use config::{MaxMcVariant, Prioritization, ReplayConfig, ScoringFunction};
pub use scoring::{score_max_mc, score_positive_value_loss, score_true_regret};
pub use snapshot::{decode_buffer, encode_buffer};
