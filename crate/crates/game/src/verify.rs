//! Numerical verification suite: the three-policy counterexample, the dual-game
//! approximation bounds over random games, and minimax regret at
//! equilibria with two regret teachers.

use rand::{Rng, SeedableRng};

use crate::dual::{nash_gap, theorem1_bound_check, BaseObjective, DualGameSpec, Profile};
use crate::error::Result;
use crate::game::{MixedStrategy, PayoffGame};
use crate::regret::{worst_case_regret, TeacherObjective};
use crate::search::{alternating_best_response, equilibrium_via_zero_sum};
use crate::table1::{table1_dual_spec, table1_equilibrium, table1_regret_excess};
use crate::zero_sum::minimax_regret_solve;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub b: f64,
    pub p: f64,
    pub eps: f64,
    pub n: usize,
    pub sweep_games: usize,
    pub corollary_games: usize,
    pub certify_eps: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { b: 1.0, p: 0.5, eps: 0.1, n: 2, sweep_games: 500, corollary_games: 20, certify_eps: 1e-8, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub ok: bool,
}

impl CheckRow {
    fn within(name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Self { name: name.into(), measured, bound: expected, ok: (measured - expected).abs() <= tol }
    }

    fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound, ok: measured <= bound }
    }
}

pub fn table1_checks(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let spec = table1_dual_spec(cfg.b, cfg.p, cfg.eps, cfg.n)?;
    let profile = table1_equilibrium(cfg.n);
    let gap = nash_gap(&spec, &profile)?;
    let (worst, _) = worst_case_regret(&spec.base, &profile.student)?;
    let optimum = minimax_regret_solve(&spec.base, 1e-9)?;
    let expected_worst = cfg.b / 2.0 + cfg.b * (1.0 - cfg.p) / 2.0 - cfg.eps;

    let mut rows = vec![
        CheckRow::at_most("counterexample/equilibrium_gap", gap.max(), 1e-9),
        CheckRow::within("counterexample/equilibrium_worst_regret", worst, expected_worst, 1e-9),
        CheckRow::within("counterexample/minimax_regret", optimum.value, cfg.b / 2.0, 1e-6),
        CheckRow::within(
            "counterexample/regret_excess",
            worst - optimum.value,
            table1_regret_excess(cfg.b, cfg.p, cfg.eps),
            1e-6,
        ),
    ];
    for which in BaseObjective::ALL {
        let c = theorem1_bound_check(&spec, &profile, which, 1e-9)?;
        rows.push(CheckRow { name: format!("counterexample/bound_{}", which.name()), measured: c.measured, bound: c.bound, ok: c.ok });
    }
    Ok(rows)
}

/// Tally of the bound sweep.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepSummary {
    pub games: usize,
    pub certified: usize,
    pub checks: usize,
    pub failures: usize,
    /// Largest `measured - bound` seen.
    pub worst_margin: f64,
}

const OBJECTIVE_PAIRS: [(TeacherObjective, TeacherObjective); 3] = [
    (TeacherObjective::regret(), TeacherObjective::uniform()),
    (TeacherObjective::uniform(), TeacherObjective::regret()),
    (TeacherObjective::regret(), TeacherObjective::regret()),
];

fn random_start<R: Rng>(rng: &mut R, g: &PayoffGame) -> Profile {
    Profile::new(
        MixedStrategy::random(rng, g.num_policies()),
        MixedStrategy::random(rng, g.num_params()),
        MixedStrategy::random(rng, g.num_params()),
    )
}

/// Candidate equilibria for one dual game: alternating best response from
/// several random starts plus the zero-sum construction. Only profiles that
/// certify as `certify_eps`-equilibria are returned.
pub fn certified_equilibria<R: Rng>(rng: &mut R, spec: &DualGameSpec, starts: usize, certify_eps: f64) -> Result<Vec<Profile>> {
    let mut found = Vec::new();
    for _ in 0..starts {
        let start = random_start(rng, &spec.base);
        if let Some(profile) = alternating_best_response(spec, start, 200, 1e-12) {
            if nash_gap(spec, &profile)?.max() <= certify_eps {
                found.push(profile);
            }
        }
    }
    let fixed = MixedStrategy::random(rng, spec.base.num_params());
    let constructed = equilibrium_via_zero_sum(spec, &fixed)?;
    if nash_gap(spec, &constructed)?.max() <= certify_eps {
        found.push(constructed);
    }
    Ok(found)
}

/// Random games of at most 5 x 5 with payoffs in `[0, 1]`, mixing
/// probabilities 0.1..0.9, and every certified equilibrium checked against
/// all three base-game bounds.
pub fn theorem1_sweep(cfg: &VerifyConfig) -> Result<SweepSummary> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut summary = SweepSummary { worst_margin: f64::NEG_INFINITY, ..Default::default() };
    for game_index in 0..cfg.sweep_games {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let g = PayoffGame::random(&mut rng, rows, cols);
        let (t1, t2) = OBJECTIVE_PAIRS[game_index % OBJECTIVE_PAIRS.len()];
        summary.games += 1;
        for k in 1..=9 {
            let p = k as f64 / 10.0;
            let spec = DualGameSpec::new(g.clone(), t1, t2, p)?;
            for profile in certified_equilibria(&mut rng, &spec, 4, cfg.certify_eps)? {
                summary.certified += 1;
                for which in BaseObjective::ALL {
                    let c = theorem1_bound_check(&spec, &profile, which, cfg.certify_eps)?;
                    summary.checks += 1;
                    summary.worst_margin = summary.worst_margin.max(c.measured - c.bound);
                    if !c.ok {
                        summary.failures += 1;
                    }
                }
            }
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorollarySummary {
    pub games: usize,
    pub certified: usize,
    pub failures: usize,
    /// Largest `worst_case_regret(student) - R*` over certified students.
    pub worst_excess: f64,
}

/// Two regret teachers: every certified equilibrium student is minimax-regret.
pub fn corollary2_check(cfg: &VerifyConfig) -> Result<CorollarySummary> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xC0_2012);
    let mut summary = CorollarySummary::default();
    for _ in 0..cfg.corollary_games {
        let rows = rng.gen_range(2..=5);
        let cols = rng.gen_range(2..=5);
        let g = PayoffGame::random(&mut rng, rows, cols);
        let optimum = minimax_regret_solve(&g, 1e-9)?;
        summary.games += 1;
        for k in 1..=9 {
            let p = k as f64 / 10.0;
            let spec = DualGameSpec::new(g.clone(), TeacherObjective::regret(), TeacherObjective::regret(), p)?;
            for profile in certified_equilibria(&mut rng, &spec, 8, cfg.certify_eps)? {
                summary.certified += 1;
                let (worst, _) = worst_case_regret(&g, &profile.student)?;
                let excess = worst - optimum.value;
                summary.worst_excess = summary.worst_excess.max(excess);
                if excess.abs() > 1e-6 + 2.0 * cfg.certify_eps + optimum.exploitability {
                    summary.failures += 1;
                }
            }
        }
    }
    Ok(summary)
}

/// Full suite as a flat list of pass/fail rows.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let mut rows = table1_checks(cfg)?;
    let sweep = theorem1_sweep(cfg)?;
    rows.push(CheckRow::at_most("bound_sweep/sweep_failures", sweep.failures as f64, 0.0));
    rows.push(CheckRow { name: "bound_sweep/certified_profiles".into(), measured: sweep.certified as f64, bound: 1.0, ok: sweep.certified >= 1 });
    let cor = corollary2_check(cfg)?;
    rows.push(CheckRow::at_most("minimax_students/failures", cor.failures as f64, 0.0));
    rows.push(CheckRow::at_most("minimax_students/worst_excess", cor.worst_excess, 1e-6 + 2.0 * cfg.certify_eps));
    Ok(rows)
}
