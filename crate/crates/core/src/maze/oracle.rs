use std::collections::VecDeque;

use super::{Action, AgentState, Direction, EnvConfig, MazeLevel};

/// Moves between start and goal over open cells, ignoring orientation.
/// Unreachable goals give 0.
pub fn shortest_path_length(level: &MazeLevel) -> usize {
    let mut dist = vec![usize::MAX; level.num_cells()];
    let mut queue = VecDeque::new();
    dist[level.cell_index(level.agent())] = 0;
    queue.push_back(level.agent());
    while let Some(c) = queue.pop_front() {
        let d = dist[level.cell_index(c)];
        if c == level.goal() {
            return d;
        }
        for dir in Direction::ALL {
            if let Some(n) = level.step_from(c, dir) {
                let i = level.cell_index(n);
                if dist[i] == usize::MAX {
                    dist[i] = d + 1;
                    queue.push_back(n);
                }
            }
        }
    }
    0
}

fn state_index(level: &MazeLevel, s: AgentState) -> usize {
    level.cell_index(s.pos) * 4 + s.dir.index()
}

/// Fewest actions (turns included) from the start state to the goal.
pub fn optimal_path_length(level: &MazeLevel) -> Option<usize> {
    let mut dist = vec![usize::MAX; level.num_cells() * 4];
    let mut queue = VecDeque::new();
    let start = level.start_state();
    dist[state_index(level, start)] = 0;
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        let d = dist[state_index(level, s)];
        if s.pos == level.goal() {
            return Some(d);
        }
        for a in Action::ALL {
            let n = match a {
                Action::Left => AgentState { dir: s.dir.turn_left(), ..s },
                Action::Right => AgentState { dir: s.dir.turn_right(), ..s },
                Action::Forward => AgentState { pos: level.step_from(s.pos, s.dir).unwrap_or(s.pos), ..s },
            };
            let i = state_index(level, n);
            if dist[i] == usize::MAX {
                dist[i] = d + 1;
                queue.push_back(n);
            }
        }
    }
    None
}

/// Best achievable return on the level.
pub fn optimal_value(level: &MazeLevel, config: &EnvConfig) -> f64 {
    match optimal_path_length(level) {
        Some(l) if l <= config.max_steps => config.goal_reward(l),
        _ => 0.0,
    }
}
