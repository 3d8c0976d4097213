use std::collections::BTreeMap;

use rand::Rng;

use crate::error::Result;
use crate::maze::{DesignPhase, DesignState, LevelTemplate, MazeLevel};

/// Table key: design step index and number of walls placed so far.
pub type DesignKey = (usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct DesignRecord {
    pub key: DesignKey,
    pub action: usize,
    pub log_prob: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DesignTrajectory {
    pub steps: Vec<DesignRecord>,
}

/// Tabular softmax level designer.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorPolicy {
    logits: BTreeMap<DesignKey, Vec<f64>>,
    num_actions: usize,
    pub entropy_coef: f64,
    pub learning_rate: f64,
}

fn softmax(z: &[f64]) -> Vec<f64> {
    let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = z.iter().map(|x| (x - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

impl GeneratorPolicy {
    pub fn new(num_actions: usize, learning_rate: f64, entropy_coef: f64) -> Self {
        Self { logits: BTreeMap::new(), num_actions, entropy_coef, learning_rate }
    }

    pub fn for_template(template: &LevelTemplate, learning_rate: f64, entropy_coef: f64) -> Self {
        Self::new(template.num_cells(), learning_rate, entropy_coef)
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    pub fn logits(&self, key: DesignKey) -> Vec<f64> {
        self.logits.get(&key).cloned().unwrap_or_else(|| vec![0.0; self.num_actions])
    }

    pub fn set_logits(&mut self, key: DesignKey, row: Vec<f64>) {
        assert_eq!(row.len(), self.num_actions);
        self.logits.insert(key, row);
    }

    pub fn probs(&self, key: DesignKey) -> Vec<f64> {
        softmax(&self.logits(key))
    }

    fn sample<R: Rng>(&self, key: DesignKey, rng: &mut R) -> (usize, f64) {
        let p = self.probs(key);
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut choice = p.len() - 1;
        for (i, pi) in p.iter().enumerate() {
            acc += pi;
            if u < acc {
                choice = i;
                break;
            }
        }
        (choice, p[choice].ln())
    }

    /// Design one level, recording every action and its log-probability.
    pub fn design<R: Rng>(&self, template: LevelTemplate, rng: &mut R) -> Result<(MazeLevel, DesignTrajectory)> {
        let mut state = DesignState::new(template)?;
        let mut traj = DesignTrajectory::default();
        while state.phase() != DesignPhase::Done {
            let key = (state.step_index(), state.walls_placed());
            let (action, log_prob) = self.sample(key, rng);
            state.apply(action, rng)?;
            traj.steps.push(DesignRecord { key, action, log_prob });
        }
        Ok((state.level().expect("completed design yields a level"), traj))
    }

    /// Gradient of `reward * sum_t log pi(a_t|k_t) + entropy_coef * sum_t H(pi(.|k_t))`.
    pub fn gradient(&self, traj: &DesignTrajectory, reward: f64) -> BTreeMap<DesignKey, Vec<f64>> {
        let mut grad: BTreeMap<DesignKey, Vec<f64>> = BTreeMap::new();
        for step in &traj.steps {
            let p = self.probs(step.key);
            let entropy: f64 = -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>();
            let g = grad.entry(step.key).or_insert_with(|| vec![0.0; self.num_actions]);
            for (b, gb) in g.iter_mut().enumerate() {
                let onehot = if b == step.action { 1.0 } else { 0.0 };
                let log_pb = if p[b] > 0.0 { p[b].ln() } else { 0.0 };
                *gb += reward * (onehot - p[b]) - self.entropy_coef * p[b] * (log_pb + entropy);
            }
        }
        grad
    }

    /// REINFORCE ascent step with entropy bonus.
    pub fn update(&mut self, traj: &DesignTrajectory, reward: f64) {
        let lr = self.learning_rate;
        for (key, g) in self.gradient(traj, reward) {
            if g.iter().all(|&x| x == 0.0) {
                continue;
            }
            let n = self.num_actions;
            let row = self.logits.entry(key).or_insert_with(|| vec![0.0; n]);
            for (z, gz) in row.iter_mut().zip(g) {
                *z += lr * gz;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.logits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logits.is_empty()
    }
}

/// Per-episode regret estimate from the two students' returns.
pub fn estimate_regret_paired(return_protagonist: f64, return_antagonist: f64) -> f64 {
    return_antagonist - return_protagonist
}
