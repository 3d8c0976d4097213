//! Exact finite-game analysis for student/teacher curriculum games.
//!
//! A base game pairs a student choosing a policy with a teacher choosing a
//! level parameter; the student is paid the policy's value on the level.
//! The dual curriculum game adds a second teacher and a mixing probability.
//! This crate computes regrets, utilities, per-player exploitability, the
//! minimax-regret student, and checks how equilibria of the dual game
//! relate to equilibria of the base games.

pub mod dual;
pub mod error;
pub mod game;
pub mod regret;
pub mod search;
pub mod table1;
pub mod verify;
pub mod zero_sum;

pub use dual::{
    dual_utilities, nash_gap, theorem1_bound_check, BaseObjective, BoundCheck, DualGameSpec, DualUtilities, NashGap,
    Profile,
};
pub use error::{GameError, Result};
pub use game::{MixedStrategy, MixedStudent, MixedTeacher, PayoffGame};
pub use regret::{regret, teacher_utility, worst_case_regret, ObjectiveKind, TeacherObjective};
pub use table1::{build_table1_game, table1_dual_spec, table1_equilibrium};
pub use zero_sum::{minimax_regret_solve, solve_zero_sum, MinimaxRegret, ZeroSumMethod, ZeroSumSolution};
