//! The four subcommands as library functions.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use dcd_core::agent::{decode_checkpoint, encode_checkpoint};
use dcd_core::curation::encode_buffer;
use dcd_core::maze::shortest_path_length;
use dcd_core::metrics::{build_test_suite, evaluate_suite, EvalSuite};
use dcd_core::rng::{stream_rng, Stream};
use dcd_core::teachers::{run_dcd_with, DcdRun};
use dcd_game::verify::{run_all, CheckRow, VerifyConfig};

use crate::artifacts::{self, EvalRow, ReportFile, RunLayout, SCHEMA_VERSION};
use crate::config::{config_pairs, render_config, RunConfig};
use crate::stats::Aggregate;

fn snapshot(run: &DcdRun, layout: &RunLayout) -> Result<()> {
    let episode = run.episode();
    artifacts::write_text(&layout.checkpoint("protagonist", episode), &encode_checkpoint(run.protagonist()))?;
    if let Some(a) = run.antagonist() {
        artifacts::write_text(&layout.checkpoint("antagonist", episode), &encode_checkpoint(a))?;
    }
    if let Some(b) = run.buffer() {
        artifacts::write_text(&layout.buffer("protagonist", episode), &encode_buffer(b, episode))?;
    }
    if let Some(b) = run.antagonist_buffer() {
        artifacts::write_text(&layout.buffer("antagonist", episode), &encode_buffer(b, episode))?;
    }
    Ok(())
}

/// Train and write `config.txt`, `metrics.csv`, `report.json`, checkpoints
/// and buffer snapshots under `cfg.out_dir`.
pub fn train(cfg: &RunConfig) -> Result<ReportFile> {
    let layout = RunLayout::new(&cfg.out_dir);
    artifacts::write_text(&layout.config(), &render_config(cfg))?;
    let every = cfg.effective_checkpoint_interval();
    let budget = cfg.dcd.episodes;
    let start = Instant::now();
    let report = run_dcd_with(cfg.dcd.clone(), |run| {
        let e = run.episode();
        if e == budget || (every > 0 && e % every == 0) {
            snapshot(run, &layout)?;
        }
        Ok::<(), anyhow::Error>(())
    })?;
    let wall_clock_seconds = start.elapsed().as_secs_f64();
    artifacts::write_metrics(&layout.metrics(), &report.metrics)?;
    let file = ReportFile { schema_version: SCHEMA_VERSION, config: config_pairs(cfg), report, wall_clock_seconds };
    artifacts::write_report(&layout.report(), &file)?;
    Ok(file)
}

fn single_level_suite(suite: &EvalSuite, index: usize) -> EvalSuite {
    EvalSuite {
        name: suite.name.clone(),
        kind: suite.kind,
        levels: vec![suite.levels[index].clone()],
        attempts_per_level: suite.attempts_per_level,
    }
}

/// Evaluate a saved protagonist on the configured suites, one row per level.
pub fn eval(checkpoint: &Path, cfg: &RunConfig) -> Result<Vec<EvalRow>> {
    if !checkpoint.is_file() {
        bail!("checkpoint {} does not exist", checkpoint.display());
    }
    let agent = decode_checkpoint(&artifacts::read_text(checkpoint)?)
        .with_context(|| format!("decoding checkpoint {}", checkpoint.display()))?;
    let d = &cfg.dcd;
    let size = d.template.width.min(d.template.height);
    let env = d.env;
    let mut rng = stream_rng(d.seed, Stream::Eval);
    let mut rows = Vec::new();
    for &kind in &d.eval.suites {
        let suite = build_test_suite(kind, size, d.eval.suite_seed, d.eval.levels_per_suite, d.eval.attempts_per_level)?;
        for i in 0..suite.levels.len() {
            let e = evaluate_suite(&agent, &single_level_suite(&suite, i), &env, d.eval.mode, &mut rng);
            let level = &suite.levels[i];
            rows.push(EvalRow {
                suite: suite.name.clone(),
                level: i,
                solved_rate: e.rates.aggregate,
                block_count: level.wall_count(),
                shortest_path: shortest_path_length(level),
                solved_path: e.complexity.solved_path_mean(),
                action_lzw: e.complexity.action_lzw_mean().unwrap_or(0.0),
            });
        }
    }
    Ok(rows)
}

/// Per-suite means of an evaluation.
pub fn eval_summary(rows: &[EvalRow]) -> BTreeMap<String, f64> {
    let mut acc: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for r in rows {
        let e = acc.entry(r.suite.clone()).or_default();
        e.0 += r.solved_rate;
        e.1 += 1;
    }
    acc.into_iter().map(|(k, (s, n))| (k, s / n as f64)).collect()
}

pub fn game(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    Ok(run_all(cfg)?)
}

pub fn render_checks(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<width$}  {:>14}  {:>14}  status\n", "check", "measured", "bound");
    for r in rows {
        let status = if r.ok { "PASS" } else { "FAIL" };
        out += &format!("{:<width$}  {:>14.6e}  {:>14.6e}  {status}\n", r.name, r.measured, r.bound);
    }
    out
}

/// Resolve a report argument: a `report.json` file or a run directory.
pub fn report_path(arg: &Path) -> PathBuf {
    if arg.is_dir() { RunLayout::new(arg).report() } else { arg.to_path_buf() }
}

/// Aggregate final metrics across runs: one row per metric.
pub fn report(paths: &[PathBuf]) -> Result<Vec<Aggregate>> {
    if paths.is_empty() {
        bail!("report needs at least one run");
    }
    let files = paths.iter().map(|p| artifacts::read_report(&report_path(p))).collect::<Result<Vec<_>>>()?;
    let mut series: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for f in &files {
        let r = &f.report;
        let mut push = |k: String, v: f64| series.entry(k).or_default().push(v);
        push("final_mean_solved_rate".into(), r.final_mean_solved_rate);
        for (suite, rate) in &r.final_solved_rates {
            push(format!("solved_rate/{suite}"), *rate);
        }
        push("episodes".into(), r.counters.episodes as f64);
        push("student_updates".into(), r.counters.student_updates as f64);
        push("replay_episodes".into(), r.counters.replay_episodes as f64);
        push("wall_clock_seconds".into(), f.wall_clock_seconds);
    }
    Ok(series.iter().filter_map(|(k, v)| Aggregate::from_values(k.clone(), v)).collect())
}

pub fn render_aggregates(rows: &[Aggregate]) -> String {
    let width = rows.iter().map(|r| r.metric.len()).max().unwrap_or(6).max(6);
    let mut out = format!("{:<width$}  {:>3}  {:>12}  {:>12}  {:>12}\n", "metric", "n", "mean", "median", "iqr");
    for r in rows {
        out += &format!("{:<width$}  {:>3}  {:>12.4}  {:>12.4}  {:>12.4}\n", r.metric, r.n, r.mean, r.median, r.iqr);
    }
    out
}

pub fn write_aggregates(path: &Path, rows: &[Aggregate]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    artifacts::write_text(path, &String::from_utf8(w.into_inner()?)?)
}

pub fn read_aggregates(path: &Path) -> Result<Vec<Aggregate>> {
    let text = artifacts::read_text(path)?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<Vec<_>, _>>()?)
}
