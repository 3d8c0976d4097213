//! Finite student x parameter payoff games and mixed strategies.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{GameError, Result};

const SIMPLEX_TOL: f64 = 1e-12;

/// Payoff matrix of a finite base game: `values[i][j]` is the value of policy
/// `i` on parameter `j`, with every entry inside `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffGame {
    values: Vec<Vec<f64>>,
    lower: f64,
    upper: f64,
}

impl PayoffGame {
    pub fn new(values: Vec<Vec<f64>>, lower: f64, upper: f64) -> Result<Self> {
        if values.is_empty() || values[0].is_empty() {
            return Err(GameError::InvalidInput("game must have at least one policy and one parameter".into()));
        }
        if !(lower <= upper) {
            return Err(GameError::InvalidInput(format!("lower bound {lower} exceeds upper bound {upper}")));
        }
        let cols = values[0].len();
        for (i, row) in values.iter().enumerate() {
            if row.len() != cols {
                return Err(GameError::InvalidInput(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < lower || v > upper {
                    return Err(GameError::InvalidInput(format!(
                        "payoff ({i},{j}) = {v} outside [{lower}, {upper}]"
                    )));
                }
            }
        }
        Ok(Self { values, lower, upper })
    }

    /// Uniform random payoffs in `[0, 1]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, num_policies: usize, num_params: usize) -> Self {
        let values = (0..num_policies)
            .map(|_| (0..num_params).map(|_| rng.gen::<f64>()).collect())
            .collect();
        Self { values, lower: 0.0, upper: 1.0 }
    }

    pub fn num_policies(&self) -> usize {
        self.values.len()
    }

    pub fn num_params(&self) -> usize {
        self.values[0].len()
    }

    pub fn value(&self, policy: usize, param: usize) -> f64 {
        self.values[policy][param]
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn lower_bound(&self) -> f64 {
        self.lower
    }

    pub fn upper_bound(&self) -> f64 {
        self.upper
    }

    /// Best achievable value on a parameter, `max_i V(i, j)`.
    pub fn best_value(&self, param: usize) -> f64 {
        self.values.iter().map(|row| row[param]).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Expected value of a mixed student on a pure parameter.
    pub fn student_value(&self, student: &MixedStrategy, param: usize) -> f64 {
        student.probs().iter().zip(&self.values).map(|(x, row)| x * row[param]).sum()
    }

    /// Expected value of a pure policy against a mixed parameter distribution.
    pub fn policy_value(&self, policy: usize, teacher: &MixedStrategy) -> f64 {
        self.values[policy].iter().zip(teacher.probs()).map(|(v, y)| v * y).sum()
    }

    /// Bilinear student utility `E[V]` under both mixtures.
    pub fn expected_value(&self, student: &MixedStrategy, teacher: &MixedStrategy) -> f64 {
        (0..self.num_policies())
            .map(|i| student.prob(i) * self.policy_value(i, teacher))
            .sum()
    }

    /// `M[i][j] = max_k V(k, j) - V(i, j)`.
    pub fn regret_matrix(&self) -> Vec<Vec<f64>> {
        let best: Vec<f64> = (0..self.num_params()).map(|j| self.best_value(j)).collect();
        self.values
            .iter()
            .map(|row| row.iter().zip(&best).map(|(v, b)| b - v).collect())
            .collect()
    }

    /// Same game with `c` added to every payoff and to both bounds.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|row| row.iter().map(|v| v + c).collect()).collect(),
            lower: self.lower + c,
            upper: self.upper + c,
        }
    }

    pub(crate) fn check_student(&self, student: &MixedStrategy) -> Result<()> {
        if student.len() != self.num_policies() {
            return Err(GameError::InvalidInput(format!(
                "student has {} entries, game has {} policies",
                student.len(),
                self.num_policies()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_teacher(&self, teacher: &MixedStrategy) -> Result<()> {
        if teacher.len() != self.num_params() {
            return Err(GameError::InvalidInput(format!(
                "teacher has {} entries, game has {} parameters",
                teacher.len(),
                self.num_params()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PayoffGame {
    /// Text matrix format: `num_policies num_params lower upper`, then one row per policy.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.num_policies(), self.num_params(), self.lower, self.upper)?;
        for row in &self.values {
            let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for PayoffGame {
    type Err = GameError;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GameError::Parse { line: 1, message: "empty input".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(GameError::Parse {
                line: hline,
                message: format!("header needs 4 fields, found {}", fields.len()),
            });
        }
        let parse_usize = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| GameError::Parse { line: hline, message: format!("bad count {s:?}: {e}") })
        };
        let parse_f64 = |s: &str, line: usize| {
            s.parse::<f64>()
                .map_err(|e| GameError::Parse { line, message: format!("bad number {s:?}: {e}") })
        };
        let rows = parse_usize(fields[0])?;
        let cols = parse_usize(fields[1])?;
        let lower = parse_f64(fields[2], hline)?;
        let upper = parse_f64(fields[3], hline)?;

        let mut values = Vec::with_capacity(rows);
        for (line, text) in lines.by_ref().take(rows) {
            let row = text.split_whitespace().map(|s| parse_f64(s, line)).collect::<Result<Vec<_>>>()?;
            if row.len() != cols {
                return Err(GameError::Parse {
                    line,
                    message: format!("expected {cols} payoffs, found {}", row.len()),
                });
            }
            values.push(row);
        }
        if values.len() != rows {
            return Err(GameError::Parse {
                line: hline,
                message: format!("expected {rows} payoff rows, found {}", values.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(GameError::Parse { line, message: "trailing content after payoff rows".into() });
        }
        Self::new(values, lower, upper)
    }
}

/// Probability vector over a finite strategy set.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy(Vec<f64>);

/// Student mixture over policies.
pub type MixedStudent = MixedStrategy;
/// Teacher mixture over level parameters.
pub type MixedTeacher = MixedStrategy;

impl MixedStrategy {
    /// Validated constructor: entries nonnegative and summing to one within 1e-12.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(GameError::InvalidInput("empty mixed strategy".into()));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(GameError::InvalidInput(format!("negative or non-finite probability in {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(GameError::InvalidInput(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self(probs))
    }

    /// Normalizes nonnegative weights onto the simplex.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(GameError::InvalidInput(format!("invalid weights {weights:?}")));
        }
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) {
            return Err(GameError::InvalidInput("weights sum to zero".into()));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub fn pure(len: usize, index: usize) -> Self {
        assert!(index < len, "pure strategy index {index} out of range {len}");
        let mut probs = vec![0.0; len];
        probs[index] = 1.0;
        Self(probs)
    }

    pub fn uniform(len: usize) -> Self {
        Self(vec![1.0 / len as f64; len])
    }

    /// Uniform over the listed indices, zero elsewhere.
    pub fn uniform_over(len: usize, support: &[usize]) -> Self {
        let mut probs = vec![0.0; len];
        let w = 1.0 / support.len() as f64;
        for &i in support {
            probs[i] += w;
        }
        Self(probs)
    }

    /// Random point on the simplex (normalized exponentials).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let w: Vec<f64> = (0..len).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let sum: f64 = w.iter().sum();
        Self(w.into_iter().map(|x| x / sum).collect())
    }

    /// `p * a + (1 - p) * b`.
    pub fn mix(a: &Self, b: &Self, p: f64) -> Self {
        assert_eq!(a.len(), b.len());
        Self(a.0.iter().zip(&b.0).map(|(x, y)| p * x + (1.0 - p) * y).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }
}
