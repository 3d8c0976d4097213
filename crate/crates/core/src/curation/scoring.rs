use super::MaxMcVariant;
use crate::agent::{gae_advantages, GaeConfig, Trajectory};
use crate::error::{CoreError, Result};
use crate::maze::{optimal_value, EnvConfig, MazeLevel};

/// Mean of the clipped GAE advantages.
pub fn score_positive_value_loss(traj: &Trajectory, config: &GaeConfig) -> Result<f64> {
    if traj.is_empty() {
        return Err(CoreError::InvalidInput("cannot score an empty trajectory".into()));
    }
    let (adv, _) = gae_advantages(traj, config);
    Ok(adv.iter().map(|a| a.max(0.0)).sum::<f64>() / adv.len() as f64)
}

/// Gap between the best return seen on the level and the critic's estimates.
pub fn score_max_mc(traj: &Trajectory, r_max: f64, variant: MaxMcVariant) -> f64 {
    if traj.values.is_empty() {
        return 0.0;
    }
    match variant {
        MaxMcVariant::PerStep => traj.values.iter().map(|v| r_max - v).sum::<f64>() / traj.values.len() as f64,
        MaxMcVariant::Start => r_max - traj.values[0],
    }
}

/// Optimal return on the level minus the return achieved.
pub fn score_true_regret(level: &MazeLevel, traj: &Trajectory, config: &EnvConfig) -> f64 {
    optimal_value(level, config) - traj.episode_return()
}
