use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use dcd_cli::{artifacts, commands, config, parse_config};
use dcd_game::verify::VerifyConfig;

#[derive(Parser)]
#[command(name = "dcd", version, about = "Curriculum design experiments on tabular gridworld mazes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a student and write report.json, metrics.csv, checkpoints and buffer snapshots.
    Train(ConfigArgs),
    /// Evaluate a saved protagonist checkpoint on the held-out suites.
    Eval {
        #[arg(long)]
        checkpoint: PathBuf,
        /// Per-level CSV destination; printed to stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run the game-theoretic verification suite.
    Game(GameArgs),
    /// Aggregate report.json files (or run directories) across seeds.
    Report {
        #[arg(required = true)]
        runs: Vec<PathBuf>,
        /// Write the aggregate table as CSV.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List every configuration key.
    Keys,
}

#[derive(Args)]
struct ConfigArgs {
    /// Flat key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Any configuration key, as KEY=VALUE. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    replay_rate: Option<String>,
    #[arg(long)]
    buffer_size: Option<String>,
    #[arg(long)]
    temperature: Option<String>,
    #[arg(long)]
    staleness: Option<String>,
    #[arg(long)]
    scoring: Option<String>,
    #[arg(long)]
    prioritization: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    gae_lambda: Option<String>,
    #[arg(long)]
    eval_interval: Option<String>,
    #[arg(long)]
    out_dir: Option<String>,
}

impl ConfigArgs {
    fn pairs(&self) -> Result<Vec<(String, String)>> {
        let mut pairs = Vec::new();
        for s in &self.set {
            let (k, v) = s.split_once('=').ok_or_else(|| anyhow!("--set expects KEY=VALUE, got {s:?}"))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let named = [
            ("algorithm", &self.algorithm),
            ("budget", &self.budget),
            ("seed", &self.seed),
            ("replay-rate", &self.replay_rate),
            ("buffer-size", &self.buffer_size),
            ("temperature", &self.temperature),
            ("staleness", &self.staleness),
            ("scoring", &self.scoring),
            ("prioritization", &self.prioritization),
            ("gamma", &self.gamma),
            ("gae-lambda", &self.gae_lambda),
            ("eval-interval", &self.eval_interval),
            ("out-dir", &self.out_dir),
        ];
        pairs.extend(named.into_iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))));
        Ok(pairs)
    }

    fn resolve(&self) -> Result<config::RunConfig> {
        Ok(parse_config(&self.pairs()?, self.config.as_deref())?)
    }
}

#[derive(Args)]
struct GameArgs {
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 500)]
    sweep_games: usize,
    #[arg(long, default_value_t = 20)]
    corollary_games: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Train(args) => {
            let cfg = args.resolve()?;
            let file = commands::train(&cfg)?;
            let r = &file.report;
            println!(
                "{} seed {}: {} episodes, {} student updates, mean solved rate {:.4} ({:.1}s)",
                r.algorithm.name(),
                r.seed,
                r.counters.episodes,
                r.counters.student_updates,
                r.final_mean_solved_rate,
                file.wall_clock_seconds
            );
            for (suite, rate) in &r.final_solved_rates {
                println!("  {suite:<14} {rate:.4}");
            }
            println!("artifacts in {}", cfg.out_dir.display());
            Ok(true)
        }
        Command::Eval { checkpoint, output, config } => {
            let cfg = config.resolve()?;
            let rows = commands::eval(&checkpoint, &cfg)?;
            match output {
                Some(path) => {
                    artifacts::write_eval(&path, &rows)?;
                    for (suite, rate) in commands::eval_summary(&rows) {
                        println!("{suite:<14} {rate:.4}");
                    }
                }
                None => print!("{}", artifacts::render_eval(&rows)?),
            }
            Ok(true)
        }
        Command::Game(g) => {
            let cfg = VerifyConfig {
                b: g.b,
                p: g.p,
                eps: g.eps,
                n: g.n,
                sweep_games: g.sweep_games,
                corollary_games: g.corollary_games,
                seed: g.seed,
                ..VerifyConfig::default()
            };
            let rows = commands::game(&cfg)?;
            print!("{}", commands::render_checks(&rows));
            Ok(rows.iter().all(|r| r.ok))
        }
        Command::Report { runs, output } => {
            let rows = commands::report(&runs)?;
            print!("{}", commands::render_aggregates(&rows));
            if let Some(path) = output {
                commands::write_aggregates(&path, &rows)?;
            }
            Ok(true)
        }
        Command::Keys => {
            for (k, d) in config::KEYS {
                println!("{k:<20} {d}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
