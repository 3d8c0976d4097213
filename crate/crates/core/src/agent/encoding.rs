use serde::{Deserialize, Serialize};

use crate::maze::{AgentState, MazeLevel};

const DISTANCE_BUCKETS: usize = 4;

/// Coarse Manhattan distance to the goal: 1, 2-3, 4-7, 8+.
fn distance_bucket(d: usize) -> usize {
    match d {
        0 | 1 => 0,
        2..=3 => 1,
        4..=7 => 2,
        _ => 3,
    }
}

/// How an agent state on a level is turned into a table key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateEncoding {
    /// Position and facing: `(y * width + x) * 4 + dir`.
    Global,
    /// Walls ahead, left and right, the signs of the goal offset in the
    /// agent's own frame and a coarse goal distance. Shared across levels of
    /// any size.
    Egocentric,
}

impl StateEncoding {
    /// Upper bound on state indices for a grid of the given size.
    pub fn num_states(self, width: usize, height: usize) -> usize {
        match self {
            StateEncoding::Global => width * height * 4,
            StateEncoding::Egocentric => 8 * 9 * DISTANCE_BUCKETS,
        }
    }

    pub fn encode(self, level: &MazeLevel, s: AgentState) -> usize {
        match self {
            StateEncoding::Global => level.cell_index(s.pos) * 4 + s.dir.index(),
            StateEncoding::Egocentric => {
                let blocked = |d| usize::from(level.step_from(s.pos, d).is_none());
                let walls = blocked(s.dir) | blocked(s.dir.turn_left()) << 1 | blocked(s.dir.turn_right()) << 2;
                let dx = level.goal().x as i64 - s.pos.x as i64;
                let dy = level.goal().y as i64 - s.pos.y as i64;
                let (fx, fy) = s.dir.offset();
                let (rx, ry) = s.dir.turn_right().offset();
                let ahead = (dx * fx + dy * fy).signum() + 1;
                let right = (dx * rx + dy * ry).signum() + 1;
                let bucket = distance_bucket((dx.abs() + dy.abs()) as usize);
                (bucket * 8 + walls) * 9 + (ahead * 3 + right) as usize
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StateEncoding::Global => "global",
            StateEncoding::Egocentric => "egocentric",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "global" => Some(StateEncoding::Global),
            "egocentric" => Some(StateEncoding::Egocentric),
            _ => None,
        }
    }
}
