use serde::{Deserialize, Serialize};

use super::{Action, Cell, Direction, MazeLevel};
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvConfig {
    pub max_steps: usize,
    pub gamma: f64,
}

impl Default for EnvConfig {
    fn default() -> Self {
        Self { max_steps: 100, gamma: 0.995 }
    }
}

impl EnvConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps == 0 {
            return Err(CoreError::Config("max-steps must be positive".into()));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(CoreError::Config(format!("gamma {} outside (0, 1]", self.gamma)));
        }
        Ok(())
    }

    /// Reward for reaching the goal on step `t` (1-based).
    pub fn goal_reward(&self, t: usize) -> f64 {
        1.0 - t as f64 / self.max_steps as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentState {
    pub pos: Cell,
    pub dir: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub state: AgentState,
    pub reward: f64,
    pub done: bool,
    pub reached_goal: bool,
}

/// One navigation step taken at time `t` (0-based, so this is step `t + 1`).
pub fn env_step(level: &MazeLevel, state: AgentState, action: Action, t: usize, config: &EnvConfig) -> StepOutcome {
    let next = match action {
        Action::Left => AgentState { dir: state.dir.turn_left(), ..state },
        Action::Right => AgentState { dir: state.dir.turn_right(), ..state },
        Action::Forward => match level.step_from(state.pos, state.dir) {
            Some(pos) => AgentState { pos, ..state },
            None => state,
        },
    };
    let elapsed = t + 1;
    if next.pos == level.goal() {
        StepOutcome { state: next, reward: config.goal_reward(elapsed), done: true, reached_goal: true }
    } else {
        StepOutcome { state: next, reward: 0.0, done: elapsed >= config.max_steps, reached_goal: false }
    }
}
