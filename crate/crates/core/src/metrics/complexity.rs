use serde::{Deserialize, Serialize};

use super::action_lzw;
use crate::agent::Trajectory;
use crate::maze::{shortest_path_length, MazeLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityRecord {
    pub block_count: usize,
    pub shortest_path: usize,
    /// Shortest path length, recorded only when the episode was solved.
    pub solved_path: Option<usize>,
    pub action_lzw: usize,
}

pub fn complexity_report(level: &MazeLevel, traj: &Trajectory) -> ComplexityRecord {
    let shortest_path = shortest_path_length(level);
    ComplexityRecord {
        block_count: level.wall_count(),
        shortest_path,
        solved_path: traj.solved().then_some(shortest_path),
        action_lzw: action_lzw(&traj.actions),
    }
}

/// Running means over a stream of records. Solved path lengths are averaged
/// over solved episodes only.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexitySummary {
    pub episodes: usize,
    pub solved: usize,
    block_sum: f64,
    shortest_sum: f64,
    solved_path_sum: f64,
    lzw_sum: f64,
}

impl ComplexitySummary {
    pub fn push(&mut self, r: &ComplexityRecord) {
        self.episodes += 1;
        self.block_sum += r.block_count as f64;
        self.shortest_sum += r.shortest_path as f64;
        self.lzw_sum += r.action_lzw as f64;
        if let Some(p) = r.solved_path {
            self.solved += 1;
            self.solved_path_sum += p as f64;
        }
    }

    fn mean(sum: f64, n: usize) -> Option<f64> {
        (n > 0).then(|| sum / n as f64)
    }

    pub fn block_count_mean(&self) -> Option<f64> {
        Self::mean(self.block_sum, self.episodes)
    }

    pub fn shortest_path_mean(&self) -> Option<f64> {
        Self::mean(self.shortest_sum, self.episodes)
    }

    pub fn solved_path_mean(&self) -> Option<f64> {
        Self::mean(self.solved_path_sum, self.solved)
    }

    pub fn action_lzw_mean(&self) -> Option<f64> {
        Self::mean(self.lzw_sum, self.episodes)
    }

    pub fn solved_rate(&self) -> Option<f64> {
        Self::mean(self.solved as f64, self.episodes)
    }
}
