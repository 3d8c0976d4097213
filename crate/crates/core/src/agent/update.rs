use std::collections::BTreeMap;

use super::{softmax, PolicyTable, RolloutMode, Trajectory, ValueTable};
use crate::error::{CoreError, Result};
use crate::maze::Action;

/// Gradient of `sum_t A_t log pi(a_t | s_t)` with respect to the logits,
/// evaluated at the current parameters.
pub fn policy_gradient(policy: &PolicyTable, traj: &Trajectory, advantages: &[f64]) -> BTreeMap<usize, [f64; Action::COUNT]> {
    let mut grad: BTreeMap<usize, [f64; Action::COUNT]> = BTreeMap::new();
    for (t, &a) in traj.actions.iter().enumerate() {
        let s = traj.states[t];
        let p = softmax(&policy.logits(s));
        let g = grad.entry(s).or_insert([0.0; Action::COUNT]);
        for (b, gb) in g.iter_mut().enumerate() {
            let onehot = if b == a.index() { 1.0 } else { 0.0 };
            *gb += advantages[t] * (onehot - p[b]);
        }
    }
    grad
}

/// One actor-critic step: policy-gradient ascent on the logits and a move of
/// each visited `V(s)` toward the mean of its targets.
pub fn update_actor_critic(
    policy: &mut PolicyTable,
    values: &mut ValueTable,
    traj: &Trajectory,
    advantages: &[f64],
    targets: &[f64],
) -> Result<()> {
    if traj.mode == RolloutMode::Eval {
        return Err(CoreError::Contract("evaluation trajectory passed to a gradient update".into()));
    }
    if advantages.len() != traj.len() || targets.len() != traj.len() {
        return Err(CoreError::InvalidInput(format!(
            "trajectory has {} steps but {} advantages and {} targets",
            traj.len(),
            advantages.len(),
            targets.len()
        )));
    }
    let lr = policy.learning_rate;
    for (s, g) in policy_gradient(policy, traj, advantages) {
        if g.iter().all(|&x| x == 0.0) {
            continue;
        }
        let row = policy.logits_mut(s);
        for (z, gz) in row.iter_mut().zip(g) {
            *z += lr * gz;
        }
    }

    let mut sums: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (t, &target) in targets.iter().enumerate() {
        let e = sums.entry(traj.value_keys[t]).or_insert((0.0, 0));
        e.0 += target;
        e.1 += 1;
    }
    let lr_v = values.learning_rate;
    for (s, (sum, n)) in sums {
        let v = values.get(s);
        values.set(s, v + lr_v * (sum / n as f64 - v));
    }
    Ok(())
}
