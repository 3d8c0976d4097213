use serde::{Deserialize, Serialize};

use crate::agent::AgentConfig;
use crate::curation::ReplayConfig;
use crate::error::{CoreError, Result};
use crate::maze::{EnvConfig, LevelTemplate};
use crate::metrics::{EvalMode, SuiteKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    DomainRandomization,
    Plr,
    RobustPlr,
    Paired,
    Repaired,
    Minimax,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::DomainRandomization,
        Algorithm::Plr,
        Algorithm::RobustPlr,
        Algorithm::Paired,
        Algorithm::Repaired,
        Algorithm::Minimax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DomainRandomization => "dr",
            Algorithm::Plr => "plr",
            Algorithm::RobustPlr => "robust-plr",
            Algorithm::Paired => "paired",
            Algorithm::Repaired => "repaired",
            Algorithm::Minimax => "minimax",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    pub fn uses_buffer(self) -> bool {
        matches!(self, Algorithm::Plr | Algorithm::RobustPlr | Algorithm::Repaired)
    }

    pub fn uses_generator(self) -> bool {
        matches!(self, Algorithm::Paired | Algorithm::Repaired | Algorithm::Minimax)
    }

    pub fn uses_antagonist(self) -> bool {
        matches!(self, Algorithm::Paired | Algorithm::Repaired)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub learning_rate: f64,
    pub entropy_coef: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self { learning_rate: 0.05, entropy_coef: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub suites: Vec<SuiteKind>,
    pub levels_per_suite: usize,
    pub attempts_per_level: usize,
    pub mode: EvalMode,
    pub suite_seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            suites: SuiteKind::ALL.to_vec(),
            levels_per_suite: 25,
            attempts_per_level: 10,
            mode: EvalMode::Stochastic,
            suite_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcdConfig {
    pub algorithm: Algorithm,
    pub replay: ReplayConfig,
    pub env: EnvConfig,
    pub agent: AgentConfig,
    pub template: LevelTemplate,
    pub generator: GeneratorConfig,
    /// Total episodes.
    pub episodes: usize,
    pub seed: u64,
    /// Episodes between evaluations; 0 evaluates only at the end.
    pub eval_interval: usize,
    pub eval: EvalConfig,
}

impl Default for DcdConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::RobustPlr,
            replay: ReplayConfig::default(),
            env: EnvConfig::default(),
            agent: AgentConfig::default(),
            template: LevelTemplate::default(),
            generator: GeneratorConfig::default(),
            episodes: 20_000,
            seed: 0,
            eval_interval: 2_000,
            eval: EvalConfig::default(),
        }
    }
}

impl DcdConfig {
    pub fn validate(&self) -> Result<()> {
        self.env.validate()?;
        self.agent.validate()?;
        self.template.validate()?;
        if self.algorithm.uses_buffer() {
            self.replay.validate()?;
        }
        if !(self.generator.learning_rate.is_finite() && self.generator.learning_rate >= 0.0) {
            return Err(CoreError::Config(format!("generator-lr {} must be finite and nonnegative", self.generator.learning_rate)));
        }
        if !(self.generator.entropy_coef.is_finite() && self.generator.entropy_coef >= 0.0) {
            return Err(CoreError::Config(format!(
                "generator-entropy {} must be finite and nonnegative",
                self.generator.entropy_coef
            )));
        }
        if self.eval.levels_per_suite == 0 || self.eval.attempts_per_level == 0 {
            return Err(CoreError::Config("eval-levels and eval-attempts must be positive".into()));
        }
        for k in &self.eval.suites {
            if self.template.width.min(self.template.height) < k.min_size() {
                return Err(CoreError::Config(format!("{} suite does not fit the grid", k.name())));
            }
        }
        Ok(())
    }
}
