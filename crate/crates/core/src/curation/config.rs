use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prioritization {
    Rank,
    Proportional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScoringFunction {
    PositiveValueLoss,
    MaxMc,
    TrueRegret,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxMcVariant {
    /// Mean over steps of `R_max - V(s_t)`.
    PerStep,
    /// `R_max - V(s_0)`.
    Start,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplayConfig {
    pub replay_rate: f64,
    pub capacity: usize,
    pub temperature: f64,
    pub staleness_coef: f64,
    pub prioritization: Prioritization,
    pub scoring: ScoringFunction,
    pub max_mc_variant: MaxMcVariant,
}

impl Default for ReplayConfig {
    fn default() -> Self {
        Self {
            replay_rate: 0.5,
            capacity: 128,
            temperature: 0.3,
            staleness_coef: 0.3,
            prioritization: Prioritization::Rank,
            scoring: ScoringFunction::MaxMc,
            max_mc_variant: MaxMcVariant::PerStep,
        }
    }
}

impl ReplayConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.replay_rate) {
            return Err(CoreError::Config(format!("replay-rate {} outside [0, 1]", self.replay_rate)));
        }
        if self.capacity == 0 {
            return Err(CoreError::Config("buffer-size must be positive".into()));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(CoreError::Config(format!("temperature {} must be positive", self.temperature)));
        }
        if !(0.0..=1.0).contains(&self.staleness_coef) {
            return Err(CoreError::Config(format!("staleness {} outside [0, 1]", self.staleness_coef)));
        }
        Ok(())
    }
}

impl Prioritization {
    pub fn name(self) -> &'static str {
        match self {
            Prioritization::Rank => "rank",
            Prioritization::Proportional => "proportional",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "rank" => Some(Prioritization::Rank),
            "proportional" => Some(Prioritization::Proportional),
            _ => None,
        }
    }
}

impl ScoringFunction {
    pub fn name(self) -> &'static str {
        match self {
            ScoringFunction::PositiveValueLoss => "positive-value-loss",
            ScoringFunction::MaxMc => "max-mc",
            ScoringFunction::TrueRegret => "true-regret",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "positive-value-loss" | "pvl" => Some(ScoringFunction::PositiveValueLoss),
            "max-mc" | "maxmc" => Some(ScoringFunction::MaxMc),
            "true-regret" => Some(ScoringFunction::TrueRegret),
            _ => None,
        }
    }
}

impl MaxMcVariant {
    pub fn name(self) -> &'static str {
        match self {
            MaxMcVariant::PerStep => "per-step",
            MaxMcVariant::Start => "start",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "per-step" => Some(MaxMcVariant::PerStep),
            "start" | "s0" => Some(MaxMcVariant::Start),
            _ => None,
        }
    }
}
