//! Two-player zero-sum matrix games and the minimax-regret problem.
//!
//! Convention: the row player picks a row and pays `M[i][j]` (minimizer),
//! the column player picks a column and receives it (maximizer).

use crate::error::{GameError, Result};
use crate::game::{MixedStrategy, MixedStudent, MixedTeacher, PayoffGame};

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 100_000;
/// Iteration cap for multiplicative weights.
pub const MWU_MAX_ITERS: usize = 1_000_000;
const MWU_CHECK_EVERY: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSumMethod {
    /// Exact LP solution with Bland's pivoting rule.
    Simplex,
    /// Hedge self-play with averaged strategies.
    MultiplicativeWeights,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumSolution {
    pub value: f64,
    pub row: MixedStrategy,
    pub col: MixedStrategy,
    /// Duality gap `max_j (x^T M)_j - min_i (M y)_i` of the returned pair.
    pub exploitability: f64,
    pub iterations: usize,
}

fn check_matrix(m: &[Vec<f64>]) -> Result<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(GameError::InvalidInput("empty matrix".into()));
    }
    if m.iter().any(|r| r.len() != cols || r.iter().any(|v| !v.is_finite())) {
        return Err(GameError::InvalidInput("matrix must be rectangular and finite".into()));
    }
    Ok((rows, cols))
}

/// Duality gap of a strategy pair; zero exactly at equilibrium.
pub fn exploitability(m: &[Vec<f64>], row: &MixedStrategy, col: &MixedStrategy) -> f64 {
    let cols = m[0].len();
    let worst_for_row = (0..cols)
        .map(|j| m.iter().zip(row.probs()).map(|(r, x)| x * r[j]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let worst_for_col = m
        .iter()
        .map(|r| r.iter().zip(col.probs()).map(|(v, y)| v * y).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    (worst_for_row - worst_for_col).max(0.0)
}

pub fn solve_zero_sum(m: &[Vec<f64>], method: ZeroSumMethod, tolerance: f64) -> Result<ZeroSumSolution> {
    check_matrix(m)?;
    match method {
        ZeroSumMethod::Simplex => solve_simplex(m),
        ZeroSumMethod::MultiplicativeWeights => solve_mwu(m, tolerance, MWU_MAX_ITERS),
    }
}

fn solve_simplex(m: &[Vec<f64>]) -> Result<ZeroSumSolution> {
    let (rows, cols) = check_matrix(m)?;
    let min = m.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 - min;

    // Row player's LP: max sum(x') s.t. sum_i (M[i][j] + shift) x'_i <= 1 for each column j.
    // Variables 0..rows are x', rows..rows+cols are slacks; last column is the rhs.
    let width = rows + cols + 1;
    let rhs = width - 1;
    let mut tableau: Vec<Vec<f64>> = (0..cols)
        .map(|j| {
            let mut line = vec![0.0; width];
            for i in 0..rows {
                line[i] = m[i][j] + shift;
            }
            line[rows + j] = 1.0;
            line[rhs] = 1.0;
            line
        })
        .collect();
    let mut objective = vec![0.0; width];
    objective[..rows].iter_mut().for_each(|c| *c = -1.0);
    let mut basis: Vec<usize> = (rows..rows + cols).collect();

    let mut pivots = 0;
    while let Some(enter) = (0..rows + cols).find(|&k| objective[k] < -PIVOT_EPS) {
        let mut leave: Option<(usize, f64)> = None;
        for (r, line) in tableau.iter().enumerate() {
            if line[enter] > PIVOT_EPS {
                let ratio = line[rhs] / line[enter];
                let better = match leave {
                    None => true,
                    Some((lr, best)) => ratio < best - PIVOT_EPS || (ratio <= best + PIVOT_EPS && basis[r] < basis[lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pr, _) = leave.ok_or_else(|| GameError::SolverFailure { iterations: pivots, exploitability: f64::INFINITY })?;

        let pivot = tableau[pr][enter];
        tableau[pr].iter_mut().for_each(|v| *v /= pivot);
        let pivot_row = tableau[pr].clone();
        for (r, line) in tableau.iter_mut().enumerate() {
            if r != pr && line[enter] != 0.0 {
                let f = line[enter];
                line.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
            }
        }
        let f = objective[enter];
        objective.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
        basis[pr] = enter;

        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(GameError::SolverFailure { iterations: pivots, exploitability: f64::INFINITY });
        }
    }

    let mut x = vec![0.0; rows];
    for (r, &b) in basis.iter().enumerate() {
        if b < rows {
            x[b] = tableau[r][rhs].max(0.0);
        }
    }
    let y: Vec<f64> = (0..cols).map(|j| objective[rows + j].max(0.0)).collect();
    let row = MixedStrategy::from_weights(x)?;
    let col = MixedStrategy::from_weights(y)?;
    let value = 1.0 / objective[rhs] - shift;
    let exploitability = exploitability(m, &row, &col);
    Ok(ZeroSumSolution { value, row, col, exploitability, iterations: pivots })
}

fn hedge(cumulative: &[f64], eta: f64, sign: f64) -> Vec<f64> {
    // sign = -1 for losses (minimizer), +1 for gains (maximizer)
    let peak = cumulative.iter().map(|c| sign * c).fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = cumulative.iter().map(|c| (eta * (sign * c - peak)).exp()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

fn solve_mwu(m: &[Vec<f64>], tolerance: f64, max_iters: usize) -> Result<ZeroSumSolution> {
    let (rows, cols) = check_matrix(m)?;
    let lo = m.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let hi = m.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    if range == 0.0 {
        let (row, col) = (MixedStrategy::uniform(rows), MixedStrategy::uniform(cols));
        return Ok(ZeroSumSolution { value: lo, row, col, exploitability: 0.0, iterations: 0 });
    }

    let mut row_loss = vec![0.0; rows];
    let mut col_gain = vec![0.0; cols];
    let mut row_avg = vec![0.0; rows];
    let mut col_avg = vec![0.0; cols];
    let mut last_gap = f64::INFINITY;
    for t in 1..=max_iters {
        let eta_row = (2.0 * (rows.max(2) as f64).ln() / t as f64).sqrt();
        let eta_col = (2.0 * (cols.max(2) as f64).ln() / t as f64).sqrt();
        let x = hedge(&row_loss, eta_row, -1.0);
        let y = hedge(&col_gain, eta_col, 1.0);
        for i in 0..rows {
            row_avg[i] += x[i];
            row_loss[i] += m[i].iter().zip(&y).map(|(v, q)| (v - lo) / range * q).sum::<f64>();
        }
        for j in 0..cols {
            col_avg[j] += y[j];
            col_gain[j] += m.iter().zip(&x).map(|(r, p)| (r[j] - lo) / range * p).sum::<f64>();
        }
        if t % MWU_CHECK_EVERY == 0 || t == max_iters {
            let row = MixedStrategy::from_weights(row_avg.clone())?;
            let col = MixedStrategy::from_weights(col_avg.clone())?;
            last_gap = exploitability(m, &row, &col);
            if last_gap <= tolerance {
                let value = crate::zero_sum::game_value(m, &row, &col);
                return Ok(ZeroSumSolution { value, row, col, exploitability: last_gap, iterations: t });
            }
        }
    }
    Err(GameError::SolverFailure { iterations: max_iters, exploitability: last_gap })
}

/// `x^T M y`.
pub fn game_value(m: &[Vec<f64>], row: &MixedStrategy, col: &MixedStrategy) -> f64 {
    m.iter()
        .zip(row.probs())
        .map(|(r, x)| x * r.iter().zip(col.probs()).map(|(v, y)| v * y).sum::<f64>())
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxRegret {
    /// Optimal worst-case regret `R*`.
    pub value: f64,
    pub student: MixedStudent,
    /// Regret-maximizing level distribution against `student`.
    pub teacher: MixedTeacher,
    pub exploitability: f64,
}

/// Minimax-regret student, certified by the zero-sum duality gap on the regret matrix.
///
/// Tries the exact LP first and falls back to multiplicative weights when
/// the LP answer does not meet `tolerance`.
pub fn minimax_regret_solve(game: &PayoffGame, tolerance: f64) -> Result<MinimaxRegret> {
    if !(tolerance > 0.0) {
        return Err(GameError::InvalidInput(format!("tolerance must be positive, got {tolerance}")));
    }
    let m = game.regret_matrix();
    let solution = match solve_simplex(&m) {
        Ok(s) if s.exploitability <= tolerance => s,
        _ => solve_mwu(&m, tolerance, MWU_MAX_ITERS)?,
    };
    Ok(MinimaxRegret {
        value: solution.value,
        student: solution.row,
        teacher: solution.col,
        exploitability: solution.exploitability,
    })
}
