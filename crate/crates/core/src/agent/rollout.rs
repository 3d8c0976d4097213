use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{PolicyTable, StateEncoding, ValueTable};
use crate::maze::{env_step, Action, EnvConfig, MazeLevel};

/// Whether a rollout may be used for a gradient step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RolloutMode {
    Train,
    /// Stop-gradient: the trajectory is only scored.
    Eval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Encoded states `s_0 ..= s_T`.
    pub states: Vec<usize>,
    /// Critic keys for the same states.
    pub value_keys: Vec<usize>,
    pub actions: Vec<Action>,
    pub rewards: Vec<f64>,
    /// `V(s_t)` as recorded during the rollout, `t < T`.
    pub values: Vec<f64>,
    /// `V(s_T)` after a timeout, 0 after reaching the goal.
    pub bootstrap_value: f64,
    pub terminal_reached: bool,
    pub mode: RolloutMode,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Undiscounted episode return.
    pub fn episode_return(&self) -> f64 {
        self.rewards.iter().sum()
    }

    pub fn solved(&self) -> bool {
        self.terminal_reached
    }
}

fn rollout<F>(
    values: &ValueTable,
    encoding: StateEncoding,
    level: &MazeLevel,
    env: &EnvConfig,
    mode: RolloutMode,
    mut choose: F,
) -> Trajectory
where
    F: FnMut(usize) -> Action,
{
    let mut state = level.start_state();
    let mut s = encoding.encode(level, state);
    let mut k = values.key(s, 0, env.max_steps);
    let mut traj = Trajectory {
        states: vec![s],
        value_keys: vec![k],
        actions: Vec::new(),
        rewards: Vec::new(),
        values: Vec::new(),
        bootstrap_value: 0.0,
        terminal_reached: false,
        mode,
    };
    for t in 0..env.max_steps {
        let a = choose(s);
        traj.values.push(values.get(k));
        let out = env_step(level, state, a, t, env);
        state = out.state;
        s = encoding.encode(level, state);
        k = values.key(s, t + 1, env.max_steps);
        traj.actions.push(a);
        traj.rewards.push(out.reward);
        traj.states.push(s);
        traj.value_keys.push(k);
        if out.done {
            traj.terminal_reached = out.reached_goal;
            break;
        }
    }
    if !traj.terminal_reached {
        traj.bootstrap_value = values.get(k);
    }
    traj
}

/// Sample actions from the policy until the goal or the step limit.
pub fn collect_trajectory<R: Rng>(
    policy: &PolicyTable,
    values: &ValueTable,
    encoding: StateEncoding,
    level: &MazeLevel,
    env: &EnvConfig,
    mode: RolloutMode,
    rng: &mut R,
) -> Trajectory {
    rollout(values, encoding, level, env, mode, |s| policy.act(s, rng))
}

/// Argmax rollout for evaluation.
pub fn collect_greedy_trajectory(
    policy: &PolicyTable,
    values: &ValueTable,
    encoding: StateEncoding,
    level: &MazeLevel,
    env: &EnvConfig,
) -> Trajectory {
    rollout(values, encoding, level, env, RolloutMode::Eval, |s| policy.greedy(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maze::{optimal_value, Cell, Direction};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn optimal_policy_matches_oracle() {
        // Corridor facing away from the goal: turn, turn, forward x3.
        let level = MazeLevel::new(4, 1, [], Cell::new(0, 0), Direction::West, Cell::new(3, 0), 0).unwrap();
        let env = EnvConfig::default();
        let enc = StateEncoding::Global;
        let mut policy = PolicyTable::new(0.0);
        let west = enc.encode(&level, level.start_state());
        let north = enc.encode(&level, crate::maze::AgentState { pos: Cell::new(0, 0), dir: Direction::North });
        policy.set_logits(west, [0.0, 50.0, 0.0]);
        policy.set_logits(north, [0.0, 50.0, 0.0]);
        for x in 0..3 {
            let s = enc.encode(&level, crate::maze::AgentState { pos: Cell::new(x, 0), dir: Direction::East });
            policy.set_logits(s, [0.0, 0.0, 50.0]);
        }
        let t = collect_greedy_trajectory(&policy, &ValueTable::new(0.0), enc, &level, &env);
        assert!(t.terminal_reached);
        assert_eq!(t.len(), 5);
        assert!((t.episode_return() - optimal_value(&level, &env)).abs() < 1e-12);
        assert_eq!(t.bootstrap_value, 0.0);
        assert_eq!(t.states.len(), t.len() + 1);
    }

    #[test]
    fn unsolvable_level_times_out() {
        let level = MazeLevel::new(3, 1, [Cell::new(1, 0)], Cell::new(0, 0), Direction::East, Cell::new(2, 0), 1).unwrap();
        let env = EnvConfig { max_steps: 20, gamma: 0.99 };
        let mut values = ValueTable::new(0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for s in 0..12 {
            values.set(s, 0.5);
        }
        let t = collect_trajectory(&PolicyTable::new(0.0), &values, StateEncoding::Global, &level, &env, RolloutMode::Train, &mut rng);
        assert!(!t.terminal_reached);
        assert_eq!(t.len(), 20);
        assert_eq!(t.episode_return(), 0.0);
        assert_eq!(t.bootstrap_value, 0.5);
        assert_eq!(t.values.len(), 20);
    }
}
