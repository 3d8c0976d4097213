use serde::{Deserialize, Serialize};

use super::Trajectory;
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaeConfig {
    pub gamma: f64,
    pub lambda: f64,
}

impl Default for GaeConfig {
    fn default() -> Self {
        Self { gamma: 0.995, lambda: 0.95 }
    }
}

impl GaeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(CoreError::Config(format!("gamma {} outside (0, 1]", self.gamma)));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(CoreError::Config(format!("gae-lambda {} outside [0, 1]", self.lambda)));
        }
        Ok(())
    }
}

/// `delta_t = r_t + gamma V(s_{t+1}) - V(s_t)`, with the bootstrap value after
/// the last step (0 when the episode terminated at the goal).
pub fn td_errors(traj: &Trajectory, gamma: f64) -> Vec<f64> {
    let t_len = traj.len();
    (0..t_len)
        .map(|t| {
            let next = if t + 1 < t_len { traj.values[t + 1] } else { traj.bootstrap_value };
            traj.rewards[t] + gamma * next - traj.values[t]
        })
        .collect()
}

/// Generalized advantage estimates and value targets `A_t + V(s_t)`.
pub fn gae_advantages(traj: &Trajectory, config: &GaeConfig) -> (Vec<f64>, Vec<f64>) {
    let deltas = td_errors(traj, config.gamma);
    let mut adv = vec![0.0; deltas.len()];
    let mut acc = 0.0;
    for t in (0..deltas.len()).rev() {
        acc = deltas[t] + config.gamma * config.lambda * acc;
        adv[t] = acc;
    }
    let targets = adv.iter().zip(&traj.values).map(|(a, v)| a + v).collect();
    (adv, targets)
}
