//! The three-player dual curriculum game: one student facing two teachers,
//! the first of which sets the level with probability `p`.
//!
//! The student's utility is linear in the teachers' mixtures, so facing
//! `(theta1, theta2)` is the same as facing the combined strategy
//! `p * theta1 + (1 - p) * theta2` in the base game. The teachers are paid
//! their own objective scaled by their share of episodes.

use crate::error::{GameError, Result};
use crate::game::{MixedStrategy, MixedStudent, MixedTeacher, PayoffGame};
use crate::regret::{expected_teacher_utility, TeacherObjective};

#[derive(Debug, Clone, PartialEq)]
pub struct DualGameSpec {
    pub base: PayoffGame,
    pub teacher1: TeacherObjective,
    pub teacher2: TeacherObjective,
    p: f64,
}

impl DualGameSpec {
    pub fn new(base: PayoffGame, teacher1: TeacherObjective, teacher2: TeacherObjective, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GameError::InvalidInput(format!("mixing probability {p} outside [0, 1]")));
        }
        Ok(Self { base, teacher1, teacher2, p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Largest pointwise gap `|U1(pi, theta) - U2(pi, theta)|` over pure strategies.
    ///
    /// Both objectives are linear in each player's mixture, so this also
    /// bounds the gap at every mixed profile.
    pub fn objective_gap(&self) -> f64 {
        let g = &self.base;
        let mut gap = 0.0f64;
        for i in 0..g.num_policies() {
            for j in 0..g.num_params() {
                let d = self.teacher1.pure_utility(g, i, j) - self.teacher2.pure_utility(g, i, j);
                gap = gap.max(d.abs());
            }
        }
        gap
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<()> {
        self.base.check_student(&profile.student)?;
        self.base.check_teacher(&profile.teacher1)?;
        self.base.check_teacher(&profile.teacher2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub student: MixedStudent,
    pub teacher1: MixedTeacher,
    pub teacher2: MixedTeacher,
}

impl Profile {
    pub fn new(student: MixedStudent, teacher1: MixedTeacher, teacher2: MixedTeacher) -> Self {
        Self { student, teacher1, teacher2 }
    }

    /// Combined level distribution `p * theta1 + (1 - p) * theta2`.
    pub fn combined_teacher(&self, p: f64) -> MixedTeacher {
        MixedStrategy::mix(&self.teacher1, &self.teacher2, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualUtilities {
    pub student: f64,
    pub teacher1: f64,
    pub teacher2: f64,
}

/// Per-player exploitability. A profile is an eps-equilibrium iff every gap is at most eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NashGap {
    pub student: f64,
    pub teacher1: f64,
    pub teacher2: f64,
}

impl NashGap {
    pub fn max(&self) -> f64 {
        self.student.max(self.teacher1).max(self.teacher2)
    }
}

pub fn dual_utilities(spec: &DualGameSpec, profile: &Profile) -> Result<DualUtilities> {
    spec.check_profile(profile)?;
    let g = &spec.base;
    let p = spec.p;
    let student = p * g.expected_value(&profile.student, &profile.teacher1)
        + (1.0 - p) * g.expected_value(&profile.student, &profile.teacher2);
    let teacher1 = p * expected_teacher_utility(&spec.teacher1, g, &profile.student, &profile.teacher1);
    let teacher2 = (1.0 - p) * expected_teacher_utility(&spec.teacher2, g, &profile.student, &profile.teacher2);
    Ok(DualUtilities { student, teacher1, teacher2 })
}

fn max_with_index(values: impl IntoIterator<Item = f64>) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, v) in values.into_iter().enumerate() {
        if v > best.0 {
            best = (v, i);
        }
    }
    best
}

/// Lowest-index pure best response of the student to a level distribution.
pub fn student_best_response(game: &PayoffGame, teacher: &MixedTeacher) -> (usize, f64) {
    let (v, i) = max_with_index((0..game.num_policies()).map(|i| game.policy_value(i, teacher)));
    (i, v)
}

/// Lowest-index pure best response of a teacher to a student.
pub fn teacher_best_response(objective: &TeacherObjective, game: &PayoffGame, student: &MixedStudent) -> (usize, f64) {
    let (v, j) = max_with_index(objective.utilities(game, student));
    (j, v)
}

pub fn nash_gap(spec: &DualGameSpec, profile: &Profile) -> Result<NashGap> {
    let current = dual_utilities(spec, profile)?;
    let g = &spec.base;
    let p = spec.p;

    let (_, best_student) = student_best_response(g, &profile.combined_teacher(p));
    let (_, best1) = teacher_best_response(&spec.teacher1, g, &profile.student);
    let (_, best2) = teacher_best_response(&spec.teacher2, g, &profile.student);

    Ok(NashGap {
        student: (best_student - current.student).max(0.0),
        teacher1: (p * best1 - current.teacher1).max(0.0),
        teacher2: ((1.0 - p) * best2 - current.teacher2).max(0.0),
    })
}

/// Which base game the combined teacher strategy is judged in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseObjective {
    /// Teacher optimizes `p * U1 + (1 - p) * U2`.
    Joint,
    Teacher1,
    Teacher2,
}

impl BaseObjective {
    pub const ALL: [BaseObjective; 3] = [BaseObjective::Joint, BaseObjective::Teacher1, BaseObjective::Teacher2];

    pub fn name(&self) -> &'static str {
        match self {
            BaseObjective::Joint => "joint",
            BaseObjective::Teacher1 => "teacher1",
            BaseObjective::Teacher2 => "teacher2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// Approximation bound from the objective gap and `p`.
    pub bound: f64,
    /// Two-player exploitability of `(pi, p*theta1 + (1-p)*theta2)` in the base game.
    pub measured: f64,
    pub ok: bool,
    /// Objective gap used for the bound.
    pub objective_gap: f64,
}

/// Checks that an equilibrium of the dual game is an approximate equilibrium
/// of the chosen base game.
///
/// The profile must first certify as a `certify_eps`-equilibrium of the dual
/// game; `ok` allows `2 * certify_eps + 1e-9` of slack on top of the bound.
pub fn theorem1_bound_check(
    spec: &DualGameSpec,
    profile: &Profile,
    which: BaseObjective,
    certify_eps: f64,
) -> Result<BoundCheck> {
    let gap = nash_gap(spec, profile)?;
    if gap.max() > certify_eps {
        return Err(GameError::Precondition(format!(
            "profile is not a {certify_eps:e}-equilibrium of the dual game (gaps {:.3e}, {:.3e}, {:.3e})",
            gap.student, gap.teacher1, gap.teacher2
        )));
    }
    let g = &spec.base;
    let p = spec.p;
    let b = spec.objective_gap();
    let bound = match which {
        BaseObjective::Joint => 2.0 * b * p * (1.0 - p),
        BaseObjective::Teacher1 => 2.0 * b * (1.0 - p),
        BaseObjective::Teacher2 => 2.0 * b * p,
    };

    let combined = profile.combined_teacher(p);
    let (_, best_student) = student_best_response(g, &combined);
    let student_gap = best_student - g.expected_value(&profile.student, &combined);

    let u1 = spec.teacher1.utilities(g, &profile.student);
    let u2 = spec.teacher2.utilities(g, &profile.student);
    let base_utility: Vec<f64> = match which {
        BaseObjective::Joint => u1.iter().zip(&u2).map(|(a, b)| p * a + (1.0 - p) * b).collect(),
        BaseObjective::Teacher1 => u1,
        BaseObjective::Teacher2 => u2,
    };
    let best_teacher = base_utility.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let current_teacher: f64 = base_utility.iter().zip(combined.probs()).map(|(u, y)| u * y).sum();
    let teacher_gap = best_teacher - current_teacher;

    let measured = student_gap.max(teacher_gap).max(0.0);
    Ok(BoundCheck { bound, measured, ok: measured <= bound + 2.0 * certify_eps + 1e-9, objective_gap: b })
}
