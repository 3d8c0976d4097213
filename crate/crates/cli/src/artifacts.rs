//! On-disk artifacts. Every file written here has a matching reader.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dcd_core::teachers::{MetricsRow, RunReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub const METRICS_HEADER: &str =
    "episode,updates,suite,solved_rate,block_count,shortest_path,solved_path_mean,action_lzw_mean,buffer_size,mean_buffer_score";

pub const EVAL_HEADER: &str = "suite,level,solved_rate,block_count,shortest_path,solved_path,action_lzw";

/// `report.json`: the deterministic run report plus the configuration echo
/// and the wall-clock time, which is kept outside the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub config: BTreeMap<String, String>,
    pub report: RunReport,
    pub wall_clock_seconds: f64,
}

/// One level's evaluation row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub suite: String,
    pub level: usize,
    pub solved_rate: f64,
    pub block_count: usize,
    pub shortest_path: usize,
    /// Mean solved path length over the solved attempts.
    pub solved_path: Option<f64>,
    pub action_lzw: f64,
}

pub struct RunLayout {
    pub root: PathBuf,
}

impl RunLayout {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn config(&self) -> PathBuf {
        self.root.join("config.txt")
    }

    pub fn metrics(&self) -> PathBuf {
        self.root.join("metrics.csv")
    }

    pub fn report(&self) -> PathBuf {
        self.root.join("report.json")
    }

    pub fn checkpoint(&self, role: &str, episode: usize) -> PathBuf {
        self.root.join("checkpoints").join(format!("{role}-{episode:08}.txt"))
    }

    pub fn buffer(&self, role: &str, episode: usize) -> PathBuf {
        self.root.join("buffers").join(format!("{role}-{episode:08}.txt"))
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn render_csv<T: Serialize>(header: &str, rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = String::from_utf8(w.into_inner()?)?;
    Ok(format!("{header}\n{body}"))
}

fn write_csv<T: Serialize>(path: &Path, header: &str, rows: &[T]) -> Result<()> {
    write_text(path, &render_csv(header, rows)?)
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path, header: &str) -> Result<Vec<T>> {
    let text = read_text(path)?;
    let first = text.lines().next().unwrap_or("");
    if first != header {
        bail!("{}: unexpected header {first:?}", path.display());
    }
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().collect::<std::result::Result<Vec<T>, _>>().with_context(|| format!("parsing {}", path.display()))
}

pub fn write_metrics(path: &Path, rows: &[MetricsRow]) -> Result<()> {
    write_csv(path, METRICS_HEADER, rows)
}

pub fn read_metrics(path: &Path) -> Result<Vec<MetricsRow>> {
    read_csv(path, METRICS_HEADER)
}

pub fn render_eval(rows: &[EvalRow]) -> Result<String> {
    render_csv(EVAL_HEADER, rows)
}

pub fn write_eval(path: &Path, rows: &[EvalRow]) -> Result<()> {
    write_csv(path, EVAL_HEADER, rows)
}

pub fn read_eval(path: &Path) -> Result<Vec<EvalRow>> {
    read_csv(path, EVAL_HEADER)
}

pub fn write_report(path: &Path, report: &ReportFile) -> Result<()> {
    write_text(path, &(serde_json::to_string_pretty(report)? + "\n"))
}

pub fn read_report(path: &Path) -> Result<ReportFile> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    match value.get("schema_version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == u64::from(SCHEMA_VERSION) => {}
        Some(v) => bail!("{}: unsupported schema_version {v}", path.display()),
        None => bail!("{}: missing schema_version", path.display()),
    }
    Ok(serde_json::from_value(value)?)
}
