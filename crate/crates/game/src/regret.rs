//! Regret and teacher objectives for the base game.

use crate::error::{GameError, Result};
use crate::game::{MixedStudent, MixedTeacher, PayoffGame};

/// Regret of a mixed student on one parameter: `max_i V(i, j) - V(student, j)`.
pub fn regret(game: &PayoffGame, student: &MixedStudent, param: usize) -> Result<f64> {
    game.check_student(student)?;
    if param >= game.num_params() {
        return Err(GameError::InvalidInput(format!(
            "parameter index {param} out of range {}",
            game.num_params()
        )));
    }
    Ok(regret_unchecked(game, student, param))
}

pub(crate) fn regret_unchecked(game: &PayoffGame, student: &MixedStudent, param: usize) -> f64 {
    (game.best_value(param) - game.student_value(student, param)).max(0.0)
}

/// Worst-case regret over all parameters and the lowest maximizing index.
pub fn worst_case_regret(game: &PayoffGame, student: &MixedStudent) -> Result<(f64, usize)> {
    game.check_student(student)?;
    let mut best = (f64::NEG_INFINITY, 0);
    for j in 0..game.num_params() {
        let r = regret_unchecked(game, student, j);
        if r > best.0 {
            best = (r, j);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    /// Teacher is paid the student's regret.
    Regret,
    /// Teacher is paid a constant, so every level is a best response.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeacherObjective {
    pub kind: ObjectiveKind,
    pub uniform_constant: f64,
}

impl TeacherObjective {
    pub const fn regret() -> Self {
        Self { kind: ObjectiveKind::Regret, uniform_constant: 0.0 }
    }

    pub const fn uniform() -> Self {
        Self { kind: ObjectiveKind::Uniform, uniform_constant: 0.0 }
    }

    /// Utility against a pure parameter.
    pub fn utility_at(&self, game: &PayoffGame, student: &MixedStudent, param: usize) -> f64 {
        match self.kind {
            ObjectiveKind::Regret => regret_unchecked(game, student, param),
            ObjectiveKind::Uniform => self.uniform_constant,
        }
    }

    /// Utility of pure policy `policy` against pure parameter `param`.
    pub fn pure_utility(&self, game: &PayoffGame, policy: usize, param: usize) -> f64 {
        match self.kind {
            ObjectiveKind::Regret => game.best_value(param) - game.value(policy, param),
            ObjectiveKind::Uniform => self.uniform_constant,
        }
    }

    /// Utilities against every pure parameter.
    pub fn utilities(&self, game: &PayoffGame, student: &MixedStudent) -> Vec<f64> {
        (0..game.num_params()).map(|j| self.utility_at(game, student, j)).collect()
    }
}

/// Expected teacher utility under the teacher's mixture.
pub fn teacher_utility(
    objective: &TeacherObjective,
    game: &PayoffGame,
    student: &MixedStudent,
    teacher: &MixedTeacher,
) -> Result<f64> {
    game.check_student(student)?;
    game.check_teacher(teacher)?;
    Ok(expected_teacher_utility(objective, game, student, teacher))
}

pub(crate) fn expected_teacher_utility(
    objective: &TeacherObjective,
    game: &PayoffGame,
    student: &MixedStudent,
    teacher: &MixedTeacher,
) -> f64 {
    match objective.kind {
        ObjectiveKind::Uniform => objective.uniform_constant,
        ObjectiveKind::Regret => (0..game.num_params())
            .map(|j| teacher.prob(j) * regret_unchecked(game, student, j))
            .sum(),
    }
}
