//! One-step environment in which a dual-game equilibrium student mixing over
//! "good on average" policies incurs strictly more worst-case regret than the
//! minimax-regret student.
//!
//! | policy | theta_0     | theta_1     | theta_2..theta_n |
//! |--------|-------------|-------------|------------------|
//! | pi_0   | B           | 0           | 0                |
//! | pi_1   | 0           | B           | 0                |
//! | pi_2   | Bp + 2eps   | 0           | Bp/2 + eps       |
//! | pi_3   | 0           | Bp + 2eps   | Bp/2 + eps       |

use crate::dual::{DualGameSpec, Profile};
use crate::error::{GameError, Result};
use crate::game::{MixedStrategy, PayoffGame};
use crate::regret::TeacherObjective;

pub fn build_table1_game(b: f64, p: f64, eps: f64, n: usize) -> Result<PayoffGame> {
    if !(b > 0.0) {
        return Err(GameError::InvalidInput(format!("B must be positive, got {b}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(GameError::InvalidInput(format!("p must lie in (0, 1), got {p}")));
    }
    let eps_max = b * (1.0 - p) / 2.0;
    if !(eps > 0.0 && eps < eps_max) {
        return Err(GameError::InvalidInput(format!("eps must lie in (0, {eps_max}), got {eps}")));
    }
    if n < 2 {
        return Err(GameError::InvalidInput(format!("n must be at least 2, got {n}")));
    }

    let high = b * p + 2.0 * eps;
    let tail = b * p / 2.0 + eps;
    let params = n + 1;
    let mut values = vec![vec![0.0; params]; 4];
    values[0][0] = b;
    values[1][1] = b;
    values[2][0] = high;
    values[3][1] = high;
    for j in 2..params {
        values[2][j] = tail;
        values[3][j] = tail;
    }
    PayoffGame::new(values, 0.0, b)
}

/// Dual game with a regret-maximizing first teacher and a uniform second teacher.
pub fn table1_dual_spec(b: f64, p: f64, eps: f64, n: usize) -> Result<DualGameSpec> {
    DualGameSpec::new(build_table1_game(b, p, eps, n)?, TeacherObjective::regret(), TeacherObjective::uniform(), p)
}

/// `(1/2 pi_2 + 1/2 pi_3, 1/2 theta_0 + 1/2 theta_1, uniform over theta_2..theta_n)`.
pub fn table1_equilibrium(n: usize) -> Profile {
    let params = n + 1;
    let tail: Vec<usize> = (2..params).collect();
    Profile::new(
        MixedStrategy::uniform_over(4, &[2, 3]),
        MixedStrategy::uniform_over(params, &[0, 1]),
        MixedStrategy::uniform_over(params, &tail),
    )
}

/// Extra worst-case regret of the equilibrium student over the optimum: `B(1 - p)/2 - eps`.
pub fn table1_regret_excess(b: f64, p: f64, eps: f64) -> f64 {
    b * (1.0 - p) / 2.0 - eps
}
