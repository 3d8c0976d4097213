use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::{Prioritization, ReplayConfig};
use crate::error::{CoreError, Result};
use crate::maze::MazeLevel;

#[derive(Debug, Clone, PartialEq)]
pub struct BufferEntry {
    pub level: MazeLevel,
    pub score: f64,
    /// Episode count when the level was last scored.
    pub timestamp: usize,
    /// Best return observed on this level while resident.
    pub max_return: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum UpdateOutcome {
    Inserted,
    /// The level was already resident; score and timestamp refreshed.
    Updated,
    Replaced { evicted_score: f64 },
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplayDecision {
    Generate,
    Replay,
}

/// Bernoulli replay decision: `Replay` with probability `p`.
pub fn sample_decision<R: Rng>(p: f64, rng: &mut R) -> ReplayDecision {
    if rng.gen_bool(p.clamp(0.0, 1.0)) {
        ReplayDecision::Replay
    } else {
        ReplayDecision::Generate
    }
}

/// Bounded store of distinct levels, kept in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelBuffer {
    capacity: usize,
    entries: Vec<BufferEntry>,
}

impl LevelBuffer {
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(CoreError::Config("buffer capacity must be positive".into()));
        }
        Ok(Self { capacity, entries: Vec::new() })
    }

    pub(crate) fn from_entries(capacity: usize, entries: Vec<BufferEntry>) -> Result<Self> {
        let mut b = Self::new(capacity)?;
        if entries.len() > capacity {
            return Err(CoreError::InvalidInput(format!("{} entries exceed capacity {capacity}", entries.len())));
        }
        for e in entries {
            if b.position(&e.level).is_some() {
                return Err(CoreError::InvalidInput("duplicate level in buffer".into()));
            }
            b.entries.push(e);
        }
        Ok(b)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BufferEntry] {
        &self.entries
    }

    pub fn position(&self, level: &MazeLevel) -> Option<usize> {
        self.entries.iter().position(|e| &e.level == level)
    }

    pub fn max_return(&self, level: &MazeLevel) -> Option<f64> {
        self.position(level).map(|i| self.entries[i].max_return)
    }

    /// Raise the stored best return of a resident level. No-op otherwise.
    pub fn record_return(&mut self, level: &MazeLevel, ret: f64) {
        if let Some(i) = self.position(level) {
            let e = &mut self.entries[i];
            e.max_return = e.max_return.max(ret);
        }
    }

    pub fn mean_score(&self) -> Option<f64> {
        (!self.is_empty()).then(|| self.entries.iter().map(|e| e.score).sum::<f64>() / self.len() as f64)
    }

    fn score_weights(&self, config: &ReplayConfig) -> Vec<f64> {
        let n = self.len();
        let inv_beta = 1.0 / config.temperature;
        let h: Vec<f64> = match config.prioritization {
            Prioritization::Rank => {
                let mut order: Vec<usize> = (0..n).collect();
                // Stable sort keeps earlier entries ahead on ties.
                order.sort_by(|&a, &b| self.entries[b].score.total_cmp(&self.entries[a].score));
                let mut h = vec![0.0; n];
                for (rank, &i) in order.iter().enumerate() {
                    h[i] = 1.0 / (rank + 1) as f64;
                }
                h
            }
            Prioritization::Proportional => self.entries.iter().map(|e| e.score.max(0.0)).collect(),
        };
        let top = h.iter().cloned().fold(0.0, f64::max);
        if top <= 0.0 {
            return vec![1.0 / n as f64; n];
        }
        let w: Vec<f64> = h.iter().map(|&x| (x / top).powf(inv_beta)).collect();
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    }

    fn staleness_weights(&self, c: usize) -> Vec<f64> {
        let n = self.len();
        let d: Vec<f64> = self.entries.iter().map(|e| c.saturating_sub(e.timestamp) as f64).collect();
        let s: f64 = d.iter().sum();
        if s <= 0.0 {
            vec![1.0 / n as f64; n]
        } else {
            d.into_iter().map(|x| x / s).collect()
        }
    }

    /// Mixture of score priority and staleness priority.
    pub fn replay_distribution(&self, config: &ReplayConfig, c: usize) -> Result<Vec<f64>> {
        if self.is_empty() {
            return Err(CoreError::EmptyBuffer);
        }
        let rho = config.staleness_coef;
        let ps = self.score_weights(config);
        let pc = self.staleness_weights(c);
        Ok(ps.iter().zip(&pc).map(|(s, t)| (1.0 - rho) * s + rho * t).collect())
    }

    /// Insert or refresh a scored level. When full, the entry with the least
    /// replay probability is evicted only if its score is below `score`.
    pub fn update(&mut self, level: MazeLevel, score: f64, c: usize, config: &ReplayConfig) -> UpdateOutcome {
        if let Some(i) = self.position(&level) {
            self.entries[i].score = score;
            self.entries[i].timestamp = c;
            return UpdateOutcome::Updated;
        }
        let fresh = BufferEntry { level, score, timestamp: c, max_return: f64::NEG_INFINITY };
        if self.len() < self.capacity {
            self.entries.push(fresh);
            return UpdateOutcome::Inserted;
        }
        let p = self.replay_distribution(config, c).expect("full buffer is nonempty");
        let mut min = 0;
        for i in 1..p.len() {
            if p[i] < p[min] {
                min = i;
            }
        }
        let evicted_score = self.entries[min].score;
        if evicted_score < score {
            self.entries.remove(min);
            self.entries.push(fresh);
            UpdateOutcome::Replaced { evicted_score }
        } else {
            UpdateOutcome::Rejected
        }
    }

    /// Index of a level drawn from the replay distribution.
    pub fn sample_index<R: Rng>(&self, config: &ReplayConfig, c: usize, rng: &mut R) -> Result<usize> {
        let p = self.replay_distribution(config, c)?;
        let dist = WeightedIndex::new(&p).map_err(|e| CoreError::InvalidInput(e.to_string()))?;
        Ok(dist.sample(rng))
    }

    pub fn sample_replay<R: Rng>(&self, config: &ReplayConfig, c: usize, rng: &mut R) -> Result<&MazeLevel> {
        let i = self.sample_index(config, c, rng)?;
        Ok(&self.entries[i].level)
    }
}
