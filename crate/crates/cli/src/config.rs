//! Run configuration: defaults, then a flat `key=value` file, then flags.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dcd_core::agent::StateEncoding;
use dcd_core::curation::{MaxMcVariant, Prioritization, ScoringFunction};
use dcd_core::metrics::{EvalMode, SuiteKind};
use dcd_core::teachers::{Algorithm, DcdConfig};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dcd: DcdConfig,
    pub out_dir: PathBuf,
    /// Episodes between checkpoints; 0 follows `eval-interval`.
    pub checkpoint_interval: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { dcd: DcdConfig::default(), out_dir: PathBuf::from("runs/default"), checkpoint_interval: 0 }
    }
}

impl RunConfig {
    pub fn effective_checkpoint_interval(&self) -> usize {
        if self.checkpoint_interval == 0 { self.dcd.eval_interval } else { self.checkpoint_interval }
    }
}

/// Every accepted key with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("algorithm", "dr | plr | robust-plr | paired | repaired | minimax"),
    ("budget", "total training episodes"),
    ("seed", "root seed for every random stream"),
    ("eval-interval", "episodes between evaluations (0: only at the end)"),
    ("checkpoint-interval", "episodes between checkpoints (0: follow eval-interval)"),
    ("out-dir", "directory for run artifacts"),
    ("replay-rate", "probability p of a replay decision, in [0, 1]"),
    ("buffer-size", "level buffer capacity K"),
    ("temperature", "prioritization temperature beta > 0"),
    ("staleness", "staleness mixing coefficient rho in [0, 1]"),
    ("scoring", "positive-value-loss | max-mc | true-regret"),
    ("prioritization", "rank | proportional"),
    ("max-mc-variant", "per-step | start"),
    ("gamma", "discount factor in (0, 1] for the environment and GAE"),
    ("gae-lambda", "GAE lambda in [0, 1]"),
    ("max-steps", "episode step limit T_max"),
    ("width", "maze interior width"),
    ("height", "maze interior height"),
    ("wall-budget", "block placement steps W"),
    ("encoding", "egocentric | global"),
    ("policy-lr", "actor learning rate"),
    ("value-lr", "critic learning rate in [0, 1]"),
    ("critic-time-buckets", "elapsed-time bins in the critic key (0: none)"),
    ("generator-lr", "generator learning rate"),
    ("generator-entropy", "generator entropy coefficient"),
    ("eval-suites", "comma-separated: rooms, spiral, perfect-maze, corridor"),
    ("eval-levels", "levels per evaluation suite"),
    ("eval-attempts", "attempts per level in stochastic evaluation"),
    ("eval-mode", "stochastic | greedy"),
    ("suite-seed", "seed of the held-out suites"),
];

fn invalid(key: &str, value: &str, reason: impl Display) -> CliError {
    CliError::InvalidValue { key: key.to_string(), value: value.to_string(), reason: reason.to_string() }
}

fn num<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: Display,
{
    value.trim().parse().map_err(|e| invalid(key, value, e))
}

fn unit(key: &str, value: &str) -> Result<f64> {
    let x: f64 = num(key, value)?;
    if (0.0..=1.0).contains(&x) { Ok(x) } else { Err(invalid(key, value, "must lie in [0, 1]")) }
}

fn positive(key: &str, value: &str) -> Result<f64> {
    let x: f64 = num(key, value)?;
    if x.is_finite() && x > 0.0 { Ok(x) } else { Err(invalid(key, value, "must be positive")) }
}

fn nonnegative(key: &str, value: &str) -> Result<f64> {
    let x: f64 = num(key, value)?;
    if x.is_finite() && x >= 0.0 { Ok(x) } else { Err(invalid(key, value, "must be nonnegative")) }
}

fn count(key: &str, value: &str) -> Result<usize> {
    let x: usize = num(key, value)?;
    if x > 0 { Ok(x) } else { Err(invalid(key, value, "must be positive")) }
}

fn named<T>(key: &str, value: &str, parse: fn(&str) -> Option<T>) -> Result<T> {
    parse(value.trim()).ok_or_else(|| invalid(key, value, "unrecognized name"))
}

/// Apply one `key=value` setting.
pub fn apply(cfg: &mut RunConfig, key: &str, value: &str) -> Result<()> {
    let d = &mut cfg.dcd;
    match key {
        "algorithm" => d.algorithm = named(key, value, Algorithm::from_name)?,
        "budget" => d.episodes = count(key, value)?,
        "seed" => d.seed = num(key, value)?,
        "eval-interval" => d.eval_interval = num(key, value)?,
        "checkpoint-interval" => cfg.checkpoint_interval = num(key, value)?,
        "out-dir" => {
            if value.trim().is_empty() {
                return Err(invalid(key, value, "must not be empty"));
            }
            cfg.out_dir = PathBuf::from(value.trim());
        }
        "replay-rate" => d.replay.replay_rate = unit(key, value)?,
        "buffer-size" => d.replay.capacity = count(key, value)?,
        "temperature" => d.replay.temperature = positive(key, value)?,
        "staleness" => d.replay.staleness_coef = unit(key, value)?,
        "scoring" => d.replay.scoring = named(key, value, ScoringFunction::from_name)?,
        "prioritization" => d.replay.prioritization = named(key, value, Prioritization::from_name)?,
        "max-mc-variant" => d.replay.max_mc_variant = named(key, value, MaxMcVariant::from_name)?,
        "gamma" => {
            let g = unit(key, value)?;
            if g == 0.0 {
                return Err(invalid(key, value, "must lie in (0, 1]"));
            }
            d.env.gamma = g;
            d.agent.gae.gamma = g;
        }
        "gae-lambda" => d.agent.gae.lambda = unit(key, value)?,
        "max-steps" => d.env.max_steps = count(key, value)?,
        "width" => d.template.width = count(key, value)?,
        "height" => d.template.height = count(key, value)?,
        "wall-budget" => d.template.budget = num(key, value)?,
        "encoding" => d.agent.encoding = named(key, value, StateEncoding::from_name)?,
        "policy-lr" => d.agent.policy_lr = nonnegative(key, value)?,
        "value-lr" => d.agent.value_lr = unit(key, value)?,
        "critic-time-buckets" => d.agent.critic_time_buckets = num(key, value)?,
        "generator-lr" => d.generator.learning_rate = nonnegative(key, value)?,
        "generator-entropy" => d.generator.entropy_coef = nonnegative(key, value)?,
        "eval-suites" => {
            let kinds = value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| SuiteKind::from_name(s).ok_or_else(|| invalid(key, value, format!("unknown suite {s}"))))
                .collect::<Result<Vec<_>>>()?;
            d.eval.suites = kinds;
        }
        "eval-levels" => d.eval.levels_per_suite = count(key, value)?,
        "eval-attempts" => d.eval.attempts_per_level = count(key, value)?,
        "eval-mode" => d.eval.mode = named(key, value, EvalMode::from_name)?,
        "suite-seed" => d.eval.suite_seed = num(key, value)?,
        _ => return Err(CliError::UnknownKey(key.to_string())),
    }
    Ok(())
}

/// Parse a flat `key=value` file. Blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Syntax { line: i + 1, message: format!("expected key=value, got {line:?}") })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

/// Resolve defaults, then `file`, then `flags`, and validate the result.
pub fn parse_config(flags: &[(String, String)], file: Option<&Path>) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        for (k, v) in parse_pairs(&text)? {
            apply(&mut cfg, &k, &v)?;
        }
    }
    for (k, v) in flags {
        apply(&mut cfg, k, v)?;
    }
    cfg.dcd.validate()?;
    Ok(cfg)
}

/// Every key with its effective value; feeding these back through
/// [`parse_config`] reproduces the configuration.
pub fn config_pairs(cfg: &RunConfig) -> BTreeMap<String, String> {
    let d = &cfg.dcd;
    let suites: Vec<&str> = d.eval.suites.iter().map(|k| k.name()).collect();
    let values: Vec<(&str, String)> = vec![
        ("algorithm", d.algorithm.name().to_string()),
        ("budget", d.episodes.to_string()),
        ("seed", d.seed.to_string()),
        ("eval-interval", d.eval_interval.to_string()),
        ("checkpoint-interval", cfg.checkpoint_interval.to_string()),
        ("out-dir", cfg.out_dir.display().to_string()),
        ("replay-rate", d.replay.replay_rate.to_string()),
        ("buffer-size", d.replay.capacity.to_string()),
        ("temperature", d.replay.temperature.to_string()),
        ("staleness", d.replay.staleness_coef.to_string()),
        ("scoring", d.replay.scoring.name().to_string()),
        ("prioritization", d.replay.prioritization.name().to_string()),
        ("max-mc-variant", d.replay.max_mc_variant.name().to_string()),
        ("gamma", d.agent.gae.gamma.to_string()),
        ("gae-lambda", d.agent.gae.lambda.to_string()),
        ("max-steps", d.env.max_steps.to_string()),
        ("width", d.template.width.to_string()),
        ("height", d.template.height.to_string()),
        ("wall-budget", d.template.budget.to_string()),
        ("encoding", d.agent.encoding.name().to_string()),
        ("policy-lr", d.agent.policy_lr.to_string()),
        ("value-lr", d.agent.value_lr.to_string()),
        ("critic-time-buckets", d.agent.critic_time_buckets.to_string()),
        ("generator-lr", d.generator.learning_rate.to_string()),
        ("generator-entropy", d.generator.entropy_coef.to_string()),
        ("eval-suites", suites.join(",")),
        ("eval-levels", d.eval.levels_per_suite.to_string()),
        ("eval-attempts", d.eval.attempts_per_level.to_string()),
        ("eval-mode", d.eval.mode.name().to_string()),
        ("suite-seed", d.eval.suite_seed.to_string()),
    ];
    values.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// The configuration as a re-parseable `key=value` file.
pub fn render_config(cfg: &RunConfig) -> String {
    config_pairs(cfg).into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}
