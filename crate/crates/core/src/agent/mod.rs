//! Tabular softmax actor-critic student.

mod checkpoint;
mod encoding;
mod gae;
mod rollout;
mod tables;
mod update;

pub use checkpoint::{decode_checkpoint, encode_checkpoint};
pub use encoding::StateEncoding;
pub use gae::{gae_advantages, td_errors, GaeConfig};
pub use rollout::{collect_greedy_trajectory, collect_trajectory, RolloutMode, Trajectory};
pub use tables::{softmax, PolicyTable, ValueTable};
pub use update::{policy_gradient, update_actor_critic};

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::maze::{EnvConfig, MazeLevel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentConfig {
    pub encoding: StateEncoding,
    pub policy_lr: f64,
    pub value_lr: f64,
    /// Elapsed-time bins in the critic key; 0 gives a time-blind critic.
    pub critic_time_buckets: usize,
    pub gae: GaeConfig,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            encoding: StateEncoding::Egocentric,
            policy_lr: 0.1,
            value_lr: 0.1,
            critic_time_buckets: 10,
            gae: GaeConfig::default(),
        }
    }
}

impl AgentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.policy_lr.is_finite() && self.policy_lr >= 0.0) {
            return Err(CoreError::Config(format!("policy-lr {} must be finite and nonnegative", self.policy_lr)));
        }
        if !(self.value_lr >= 0.0 && self.value_lr <= 1.0) {
            return Err(CoreError::Config(format!("value-lr {} outside [0, 1]", self.value_lr)));
        }
        self.gae.validate()
    }
}

/// A student: policy, critic and the hyperparameters used to train them.
#[derive(Debug, Clone, PartialEq)]
pub struct ActorCritic {
    pub policy: PolicyTable,
    pub values: ValueTable,
    pub config: AgentConfig,
}

impl ActorCritic {
    pub fn new(config: AgentConfig) -> Self {
        Self {
            policy: PolicyTable::new(config.policy_lr),
            values: ValueTable::with_time_buckets(config.value_lr, config.critic_time_buckets),
            config,
        }
    }

    pub fn rollout<R: Rng>(&self, level: &MazeLevel, env: &EnvConfig, mode: RolloutMode, rng: &mut R) -> Trajectory {
        collect_trajectory(&self.policy, &self.values, self.config.encoding, level, env, mode, rng)
    }

    /// GAE targets and one actor-critic step. Returns the advantages used.
    pub fn train_on(&mut self, traj: &Trajectory) -> Result<Vec<f64>> {
        let (adv, targets) = gae_advantages(traj, &self.config.gae);
        update_actor_critic(&mut self.policy, &mut self.values, traj, &adv, &targets)?;
        Ok(adv)
    }

    /// Hash of every parameter bit pattern.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for (s, row) in self.policy.rows() {
            s.hash(&mut h);
            for v in row {
                v.to_bits().hash(&mut h);
            }
        }
        for (s, v) in self.values.entries() {
            s.hash(&mut h);
            v.to_bits().hash(&mut h);
        }
        h.finish()
    }
}
