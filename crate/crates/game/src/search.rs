//! Equilibrium search for the dual curriculum game.
//!
//! These routines only propose profiles; callers certify them with
//! [`nash_gap`](crate::dual::nash_gap).

use crate::dual::{student_best_response, teacher_best_response, DualGameSpec, Profile};
use crate::error::{GameError, Result};
use crate::game::{MixedStrategy, MixedTeacher};
use crate::regret::{expected_teacher_utility, ObjectiveKind};
use crate::zero_sum::{solve_zero_sum, ZeroSumMethod};

/// Alternating best response from `start`.
///
/// Each player in turn switches to its lowest-index pure best response when
/// its current strategy loses more than `tol`. Returns the fixed point, or
/// `None` if the profile is still moving after `max_rounds` rounds.
pub fn alternating_best_response(spec: &DualGameSpec, start: Profile, max_rounds: usize, tol: f64) -> Option<Profile> {
    let g = &spec.base;
    let p = spec.p();
    let mut profile = start;
    for _ in 0..max_rounds {
        let mut changed = false;

        let combined = profile.combined_teacher(p);
        let (i, best) = student_best_response(g, &combined);
        if best - g.expected_value(&profile.student, &combined) > tol {
            profile.student = MixedStrategy::pure(g.num_policies(), i);
            changed = true;
        }

        let (j, best) = teacher_best_response(&spec.teacher1, g, &profile.student);
        if best - expected_teacher_utility(&spec.teacher1, g, &profile.student, &profile.teacher1) > tol {
            profile.teacher1 = MixedStrategy::pure(g.num_params(), j);
            changed = true;
        }

        let (j, best) = teacher_best_response(&spec.teacher2, g, &profile.student);
        if best - expected_teacher_utility(&spec.teacher2, g, &profile.student, &profile.teacher2) > tol {
            profile.teacher2 = MixedStrategy::pure(g.num_params(), j);
            changed = true;
        }

        if !changed {
            return Some(profile);
        }
    }
    None
}

/// Builds an equilibrium by reducing the dual game to a zero-sum matrix game.
///
/// Uniform-objective teachers are indifferent, so they are held at `fixed`.
/// With one regret teacher, the student and that teacher then play a game
/// that is zero-sum up to terms each player cannot influence. With two
/// regret teachers both play the same regret-maximizing mixture.
pub fn equilibrium_via_zero_sum(spec: &DualGameSpec, fixed: &MixedTeacher) -> Result<Profile> {
    let g = &spec.base;
    spec.base.check_teacher(fixed)?;
    let p = spec.p();
    let regret = g.regret_matrix();

    match (spec.teacher1.kind, spec.teacher2.kind) {
        (ObjectiveKind::Regret, ObjectiveKind::Regret) => {
            let s = solve_zero_sum(&regret, ZeroSumMethod::Simplex, 1e-12)?;
            Ok(Profile::new(s.row, s.col.clone(), s.col))
        }
        (ObjectiveKind::Uniform, ObjectiveKind::Uniform) => {
            let combined = MixedStrategy::mix(fixed, fixed, p);
            let (i, _) = student_best_response(g, &combined);
            Ok(Profile::new(MixedStrategy::pure(g.num_policies(), i), fixed.clone(), fixed.clone()))
        }
        (k1, _) => {
            // One regret teacher; `share` is its probability of setting the level.
            let regret_first = k1 == ObjectiveKind::Regret;
            let share = if regret_first { p } else { 1.0 - p };
            if share == 0.0 {
                // The regret teacher never acts: the student answers the fixed teacher alone.
                let (i, _) = student_best_response(g, fixed);
                let student = MixedStrategy::pure(g.num_policies(), i);
                let objective = if regret_first { &spec.teacher1 } else { &spec.teacher2 };
                let (j, _) = teacher_best_response(objective, g, &student);
                let free = MixedStrategy::pure(g.num_params(), j);
                return Ok(if regret_first {
                    Profile::new(student, free, fixed.clone())
                } else {
                    Profile::new(student, fixed.clone(), free)
                });
            }
            let weight = (1.0 - share) / share;
            let loss: Vec<Vec<f64>> = (0..g.num_policies())
                .map(|i| {
                    let side = weight * g.policy_value(i, fixed);
                    regret[i].iter().map(|r| r - side).collect()
                })
                .collect();
            let s = solve_zero_sum(&loss, ZeroSumMethod::Simplex, 1e-12)?;
            if !s.exploitability.is_finite() {
                return Err(GameError::SolverFailure { iterations: s.iterations, exploitability: s.exploitability });
            }
            Ok(if regret_first {
                Profile::new(s.row, s.col, fixed.clone())
            } else {
                Profile::new(s.row, fixed.clone(), s.col)
            })
        }
    }
}
