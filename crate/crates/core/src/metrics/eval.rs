use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{complexity_report, ComplexitySummary, EvalSuite};
use crate::agent::{collect_greedy_trajectory, ActorCritic, RolloutMode};
use crate::maze::EnvConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvalMode {
    /// Argmax actions; one rollout per level since the outcome is fixed.
    Greedy,
    /// Sampled actions, `attempts_per_level` rollouts per level.
    Stochastic,
}

impl EvalMode {
    pub fn name(self) -> &'static str {
        match self {
            EvalMode::Greedy => "greedy",
            EvalMode::Stochastic => "stochastic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "greedy" => Some(EvalMode::Greedy),
            "stochastic" => Some(EvalMode::Stochastic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvedRates {
    pub per_level: Vec<f64>,
    /// Mean over levels.
    pub aggregate: f64,
}

/// Solved rates plus complexity statistics of the evaluation rollouts.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEvaluation {
    pub rates: SolvedRates,
    pub complexity: ComplexitySummary,
}

pub fn evaluate_suite<R: Rng>(agent: &ActorCritic, suite: &EvalSuite, env: &EnvConfig, mode: EvalMode, rng: &mut R) -> SuiteEvaluation {
    let mut complexity = ComplexitySummary::default();
    let per_level: Vec<f64> = suite
        .levels
        .iter()
        .map(|level| {
            let attempts = match mode {
                EvalMode::Greedy => 1,
                EvalMode::Stochastic => suite.attempts_per_level,
            };
            let mut solved = 0;
            for _ in 0..attempts {
                let t = match mode {
                    EvalMode::Greedy => collect_greedy_trajectory(&agent.policy, &agent.values, agent.config.encoding, level, env),
                    EvalMode::Stochastic => agent.rollout(level, env, RolloutMode::Eval, rng),
                };
                complexity.push(&complexity_report(level, &t));
                solved += usize::from(t.solved());
            }
            solved as f64 / attempts as f64
        })
        .collect();
    let aggregate = if per_level.is_empty() { 0.0 } else { per_level.iter().sum::<f64>() / per_level.len() as f64 };
    SuiteEvaluation { rates: SolvedRates { per_level, aggregate }, complexity }
}

pub fn solved_rate<R: Rng>(agent: &ActorCritic, suite: &EvalSuite, env: &EnvConfig, mode: EvalMode, rng: &mut R) -> SolvedRates {
    evaluate_suite(agent, suite, env, mode, rng).rates
}
