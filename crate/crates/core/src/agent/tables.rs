use std::collections::BTreeMap;

use rand::Rng;

use crate::maze::Action;

const A: usize = Action::COUNT;

pub fn softmax(logits: &[f64; A]) -> [f64; A] {
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out = logits.map(|z| (z - m).exp());
    let s: f64 = out.iter().sum();
    for p in &mut out {
        *p /= s;
    }
    out
}

/// Softmax policy over the three navigation actions. Rows not yet touched
/// read as all-zero logits.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyTable {
    logits: BTreeMap<usize, [f64; A]>,
    pub learning_rate: f64,
}

impl PolicyTable {
    pub fn new(learning_rate: f64) -> Self {
        Self { logits: BTreeMap::new(), learning_rate }
    }

    pub fn logits(&self, state: usize) -> [f64; A] {
        self.logits.get(&state).copied().unwrap_or([0.0; A])
    }

    pub fn logits_mut(&mut self, state: usize) -> &mut [f64; A] {
        self.logits.entry(state).or_insert([0.0; A])
    }

    pub fn set_logits(&mut self, state: usize, row: [f64; A]) {
        self.logits.insert(state, row);
    }

    pub fn probs(&self, state: usize) -> [f64; A] {
        softmax(&self.logits(state))
    }

    pub fn act<R: Rng>(&self, state: usize, rng: &mut R) -> Action {
        let p = self.probs(state);
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, pi) in p.iter().enumerate() {
            acc += pi;
            if u < acc {
                return Action::from_index(i);
            }
        }
        Action::from_index(A - 1)
    }

    /// Highest-probability action, lowest index on ties.
    pub fn greedy(&self, state: usize) -> Action {
        let row = self.logits(state);
        let mut best = 0;
        for i in 1..A {
            if row[i] > row[best] {
                best = i;
            }
        }
        Action::from_index(best)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[f64; A])> {
        self.logits.iter().map(|(&s, r)| (s, r))
    }

    pub fn len(&self) -> usize {
        self.logits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logits.is_empty()
    }
}

/// Tabular critic; unseen keys read as 0. With `time_buckets > 0` the key
/// also carries elapsed time, split into that many equal bins of the horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable {
    values: BTreeMap<usize, f64>,
    pub learning_rate: f64,
    pub time_buckets: usize,
}

impl ValueTable {
    pub fn new(learning_rate: f64) -> Self {
        Self::with_time_buckets(learning_rate, 0)
    }

    pub fn with_time_buckets(learning_rate: f64, time_buckets: usize) -> Self {
        Self { values: BTreeMap::new(), learning_rate, time_buckets }
    }

    /// Critic key for encoded state `state` after `t` of `max_steps` steps.
    pub fn key(&self, state: usize, t: usize, max_steps: usize) -> usize {
        if self.time_buckets == 0 {
            return state;
        }
        let bucket = (t * self.time_buckets / max_steps.max(1)).min(self.time_buckets - 1);
        state * self.time_buckets + bucket
    }

    pub fn get(&self, state: usize) -> f64 {
        self.values.get(&state).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, state: usize, v: f64) {
        self.values.insert(state, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().map(|(&s, &v)| (s, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
