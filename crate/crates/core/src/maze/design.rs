use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Cell, Direction, MazeLevel};
use crate::error::{CoreError, Result};

/// Grid size and block budget for designed levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTemplate {
    pub width: usize,
    pub height: usize,
    pub budget: usize,
}

impl Default for LevelTemplate {
    fn default() -> Self {
        Self { width: 8, height: 8, budget: 12 }
    }
}

impl LevelTemplate {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(CoreError::Config(format!("grid {}x{} is empty", self.width, self.height)));
        }
        if self.budget + 2 > self.width * self.height {
            return Err(CoreError::Config(format!(
                "block budget {} leaves no room for agent and goal on a {}x{} grid",
                self.budget, self.width, self.height
            )));
        }
        Ok(())
    }

    pub fn num_cells(&self) -> usize {
        self.width * self.height
    }

    /// Total number of design actions: blocks, then agent, then goal.
    pub fn num_steps(&self) -> usize {
        self.budget + 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DesignPhase {
    PlacingBlocks,
    PlacingAgent,
    PlacingGoal,
    Done,
}

/// A partially designed level. Each design action names a grid cell by
/// row-major index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignState {
    template: LevelTemplate,
    walls: Vec<bool>,
    step: usize,
    phase: DesignPhase,
    agent: Option<(Cell, Direction)>,
    goal: Option<Cell>,
}

impl DesignState {
    pub fn new(template: LevelTemplate) -> Result<Self> {
        template.validate()?;
        let phase = if template.budget == 0 { DesignPhase::PlacingAgent } else { DesignPhase::PlacingBlocks };
        Ok(Self { template, walls: vec![false; template.num_cells()], step: 0, phase, agent: None, goal: None })
    }

    pub fn template(&self) -> LevelTemplate {
        self.template
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn phase(&self) -> DesignPhase {
        self.phase
    }

    pub fn walls_placed(&self) -> usize {
        self.walls.iter().filter(|&&w| w).count()
    }

    fn random_empty<R: Rng>(&self, rng: &mut R, exclude: Option<Cell>) -> Cell {
        let w = self.template.width;
        let free: Vec<usize> = (0..self.walls.len())
            .filter(|&i| !self.walls[i] && exclude.map_or(true, |c| c.y * w + c.x != i))
            .collect();
        // The template check guarantees at least two free cells.
        let i = *free.choose(rng).expect("free cell available");
        Cell::new(i % w, i / w)
    }

    /// Apply one design action.
    pub fn apply<R: Rng>(&mut self, action: usize, rng: &mut R) -> Result<()> {
        let n = self.template.num_cells();
        if action >= n {
            return Err(CoreError::InvalidInput(format!("design action {action} outside grid of {n} cells")));
        }
        let w = self.template.width;
        let cell = Cell::new(action % w, action / w);
        match self.phase {
            DesignPhase::PlacingBlocks => {
                self.walls[action] = true;
                if self.step + 1 == self.template.budget {
                    self.phase = DesignPhase::PlacingAgent;
                }
            }
            DesignPhase::PlacingAgent => {
                let pos = if self.walls[action] { self.random_empty(rng, None) } else { cell };
                let facing = Direction::from_index(rng.gen_range(0..4));
                self.agent = Some((pos, facing));
                self.phase = DesignPhase::PlacingGoal;
            }
            DesignPhase::PlacingGoal => {
                let agent = self.agent.map(|(c, _)| c);
                let pos = if self.walls[action] || Some(cell) == agent { self.random_empty(rng, agent) } else { cell };
                self.goal = Some(pos);
                self.phase = DesignPhase::Done;
            }
            DesignPhase::Done => {
                return Err(CoreError::Contract("design is already complete".into()));
            }
        }
        self.step += 1;
        Ok(())
    }

    /// The finished level, once the goal has been placed.
    pub fn level(&self) -> Option<MazeLevel> {
        let (agent, facing) = self.agent?;
        let goal = self.goal?;
        let w = self.template.width;
        let walls = (0..self.walls.len()).filter(|&i| self.walls[i]).map(|i| Cell::new(i % w, i / w));
        MazeLevel::new(w, self.template.height, walls, agent, facing, goal, self.template.budget).ok()
    }
}

/// Functional form of [`DesignState::apply`].
pub fn design_step<R: Rng>(mut state: DesignState, action: usize, rng: &mut R) -> Result<DesignState> {
    state.apply(action, rng)?;
    Ok(state)
}

/// Domain randomization: every design action uniform over the grid.
pub fn generate_random_design<R: Rng>(rng: &mut R, template: LevelTemplate) -> Result<MazeLevel> {
    let mut state = DesignState::new(template)?;
    while state.phase() != DesignPhase::Done {
        let a = rng.gen_range(0..template.num_cells());
        state.apply(a, rng)?;
    }
    Ok(state.level().expect("completed design yields a level"))
}
