//! Maze levels: grid, design protocol, navigation dynamics and exact oracles.

mod design;
mod env;
mod oracle;
mod text;

pub use design::{design_step, generate_random_design, DesignPhase, DesignState, LevelTemplate};
pub use env::{env_step, AgentState, EnvConfig, StepOutcome};
pub use oracle::{optimal_path_length, optimal_value, shortest_path_length};
pub use text::{decode_level, encode_level};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Facing direction, clockwise from east. `y` grows downwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    East,
    South,
    West,
    North,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::East, Direction::South, Direction::West, Direction::North];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i % 4]
    }

    pub fn turn_right(self) -> Self {
        Self::from_index(self.index() + 1)
    }

    pub fn turn_left(self) -> Self {
        Self::from_index(self.index() + 3)
    }

    pub fn offset(self) -> (i64, i64) {
        match self {
            Direction::East => (1, 0),
            Direction::South => (0, 1),
            Direction::West => (-1, 0),
            Direction::North => (0, -1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::East => 'E',
            Direction::South => 'S',
            Direction::West => 'W',
            Direction::North => 'N',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'E' => Some(Direction::East),
            'S' => Some(Direction::South),
            'W' => Some(Direction::West),
            'N' => Some(Direction::North),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Left,
    Right,
    Forward,
}

impl Action {
    pub const ALL: [Action; 3] = [Action::Left, Action::Right, Action::Forward];
    pub const COUNT: usize = 3;

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

/// A fully specified maze. The grid is the interior; the surrounding border
/// is always wall and is not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MazeLevel {
    width: usize,
    height: usize,
    walls: Vec<bool>,
    agent: Cell,
    facing: Direction,
    goal: Cell,
    budget: usize,
}

impl MazeLevel {
    pub fn new(
        width: usize,
        height: usize,
        walls: impl IntoIterator<Item = Cell>,
        agent: Cell,
        facing: Direction,
        goal: Cell,
        budget: usize,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(CoreError::InvalidInput(format!("grid must be nonempty, got {width}x{height}")));
        }
        let mut grid = vec![false; width * height];
        let in_bounds = |c: Cell| c.x < width && c.y < height;
        for w in walls {
            if !in_bounds(w) {
                return Err(CoreError::InvalidInput(format!("wall {w} outside {width}x{height} grid")));
            }
            grid[w.y * width + w.x] = true;
        }
        let level = Self { width, height, walls: grid, agent, facing, goal, budget };
        level.validate()?;
        Ok(level)
    }

    fn validate(&self) -> Result<()> {
        for (name, c) in [("agent", self.agent), ("goal", self.goal)] {
            if c.x >= self.width || c.y >= self.height {
                return Err(CoreError::InvalidInput(format!("{name} {c} outside grid")));
            }
            if self.is_wall(c) {
                return Err(CoreError::InvalidInput(format!("{name} {c} is on a wall")));
            }
        }
        if self.agent == self.goal {
            return Err(CoreError::InvalidInput("agent and goal share a cell".into()));
        }
        let count = self.wall_count();
        if count > self.budget {
            return Err(CoreError::InvalidInput(format!("{count} walls exceed budget {}", self.budget)));
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn agent(&self) -> Cell {
        self.agent
    }

    pub fn facing(&self) -> Direction {
        self.facing
    }

    pub fn goal(&self) -> Cell {
        self.goal
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn num_cells(&self) -> usize {
        self.width * self.height
    }

    pub fn cell_index(&self, c: Cell) -> usize {
        c.y * self.width + c.x
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index % self.width, index / self.width)
    }

    pub fn is_wall(&self, c: Cell) -> bool {
        self.walls[self.cell_index(c)]
    }

    /// Whether signed coordinates name a free interior cell.
    pub fn is_open(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.width
            && (y as usize) < self.height
            && !self.walls[y as usize * self.width + x as usize]
    }

    /// Neighbour reached by one forward move, if it is open.
    pub fn step_from(&self, c: Cell, d: Direction) -> Option<Cell> {
        let (dx, dy) = d.offset();
        let (x, y) = (c.x as i64 + dx, c.y as i64 + dy);
        self.is_open(x, y).then(|| Cell::new(x as usize, y as usize))
    }

    pub fn wall_count(&self) -> usize {
        self.walls.iter().filter(|&&w| w).count()
    }

    pub fn walls(&self) -> BTreeSet<Cell> {
        (0..self.num_cells()).filter(|&i| self.walls[i]).map(|i| self.cell_at(i)).collect()
    }

    pub fn start_state(&self) -> AgentState {
        AgentState { pos: self.agent, dir: self.facing }
    }
}

impl fmt::Display for MazeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode_level(self))
    }
}
