use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{estimate_regret_paired, Algorithm, DcdConfig, GeneratorPolicy};
use crate::agent::{ActorCritic, RolloutMode, Trajectory};
use crate::curation::{
    sample_decision, score_max_mc, score_positive_value_loss, score_true_regret, LevelBuffer, ReplayDecision,
    ScoringFunction,
};
use crate::error::{CoreError, Result};
use crate::maze::{generate_random_design, MazeLevel};
use crate::metrics::{build_test_suite, complexity_report, evaluate_suite, ComplexitySummary, EvalSuite};
use crate::rng::{eval_rng, stream_rng, Stream};

pub type EpisodeKind = ReplayDecision;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub episodes: usize,
    pub generate_episodes: usize,
    pub replay_episodes: usize,
    /// Replay decisions turned into Generate because a buffer was empty.
    pub empty_buffer_fallbacks: usize,
    pub student_updates: usize,
    pub antagonist_updates: usize,
    pub generator_updates: usize,
    /// Generate episodes on which student parameters were verified unchanged.
    pub stop_gradient_checks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeSummary {
    pub kind: EpisodeKind,
    /// Level the protagonist played.
    pub level: MazeLevel,
    pub protagonist_return: f64,
    pub antagonist_return: Option<f64>,
    pub protagonist_trained: bool,
    pub antagonist_trained: bool,
    pub protagonist_score: Option<f64>,
    pub generator_reward: Option<f64>,
}

/// One CSV row. `suite` is an evaluation suite name, or `train` for the
/// levels the protagonist trained on since the previous row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub episode: usize,
    pub updates: usize,
    pub suite: String,
    pub solved_rate: Option<f64>,
    pub block_count: Option<f64>,
    pub shortest_path: Option<f64>,
    pub solved_path_mean: Option<f64>,
    pub action_lzw_mean: Option<f64>,
    pub buffer_size: usize,
    pub mean_buffer_score: Option<f64>,
}

/// Deterministic outcome of a run: identical config gives an identical report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub counters: Counters,
    pub metrics: Vec<MetricsRow>,
    pub final_solved_rates: BTreeMap<String, f64>,
    pub final_mean_solved_rate: f64,
}

pub struct DcdRun {
    config: DcdConfig,
    level_rng: ChaCha8Rng,
    protagonist_rng: ChaCha8Rng,
    antagonist_rng: ChaCha8Rng,
    buffer_rng: ChaCha8Rng,
    teacher_rng: ChaCha8Rng,
    protagonist: ActorCritic,
    antagonist: Option<ActorCritic>,
    buffer: Option<LevelBuffer>,
    antagonist_buffer: Option<LevelBuffer>,
    generator: Option<GeneratorPolicy>,
    counters: Counters,
    suites: Vec<EvalSuite>,
    interval: ComplexitySummary,
    metrics: Vec<MetricsRow>,
    final_rates: BTreeMap<String, f64>,
}

impl DcdRun {
    pub fn new(config: DcdConfig) -> Result<Self> {
        config.validate()?;
        let alg = config.algorithm;
        let seed = config.seed;
        let size = config.template.width.min(config.template.height);
        let suites = config
            .eval
            .suites
            .iter()
            .map(|&k| build_test_suite(k, size, config.eval.suite_seed, config.eval.levels_per_suite, config.eval.attempts_per_level))
            .collect::<Result<Vec<_>>>()?;
        let buffer = |on: bool| -> Result<Option<LevelBuffer>> {
            if on { LevelBuffer::new(config.replay.capacity).map(Some) } else { Ok(None) }
        };
        Ok(Self {
            level_rng: stream_rng(seed, Stream::Level),
            protagonist_rng: stream_rng(seed, Stream::Protagonist),
            antagonist_rng: stream_rng(seed, Stream::Antagonist),
            buffer_rng: stream_rng(seed, Stream::Buffer),
            teacher_rng: stream_rng(seed, Stream::Teacher),
            protagonist: ActorCritic::new(config.agent),
            antagonist: alg.uses_antagonist().then(|| ActorCritic::new(config.agent)),
            buffer: buffer(alg.uses_buffer())?,
            antagonist_buffer: buffer(alg == Algorithm::Repaired)?,
            generator: alg.uses_generator().then(|| {
                GeneratorPolicy::for_template(&config.template, config.generator.learning_rate, config.generator.entropy_coef)
            }),
            counters: Counters::default(),
            suites,
            interval: ComplexitySummary::default(),
            metrics: Vec::new(),
            final_rates: BTreeMap::new(),
            config,
        })
    }

    pub fn config(&self) -> &DcdConfig {
        &self.config
    }

    pub fn episode(&self) -> usize {
        self.counters.episodes
    }

    pub fn finished(&self) -> bool {
        self.counters.episodes >= self.config.episodes
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn protagonist(&self) -> &ActorCritic {
        &self.protagonist
    }

    pub fn antagonist(&self) -> Option<&ActorCritic> {
        self.antagonist.as_ref()
    }

    pub fn buffer(&self) -> Option<&LevelBuffer> {
        self.buffer.as_ref()
    }

    pub fn antagonist_buffer(&self) -> Option<&LevelBuffer> {
        self.antagonist_buffer.as_ref()
    }

    pub fn generator(&self) -> Option<&GeneratorPolicy> {
        self.generator.as_ref()
    }

    pub fn suites(&self) -> &[EvalSuite] {
        &self.suites
    }

    pub fn metrics(&self) -> &[MetricsRow] {
        &self.metrics
    }

    fn score(&self, level: &MazeLevel, traj: &Trajectory, r_max: f64) -> Result<f64> {
        let r = &self.config.replay;
        Ok(match r.scoring {
            ScoringFunction::PositiveValueLoss => score_positive_value_loss(traj, &self.config.agent.gae)?,
            ScoringFunction::MaxMc => score_max_mc(traj, r_max, r.max_mc_variant),
            ScoringFunction::TrueRegret => score_true_regret(level, traj, &self.config.env),
        })
    }

    fn train_protagonist(&mut self, level: &MazeLevel, traj: &Trajectory) -> Result<()> {
        self.protagonist.train_on(traj)?;
        self.counters.student_updates += 1;
        self.interval.push(&complexity_report(level, traj));
        Ok(())
    }

    fn decide(&mut self) -> ReplayDecision {
        let d = sample_decision(self.config.replay.replay_rate, &mut self.buffer_rng);
        let empty = |b: &Option<LevelBuffer>| b.as_ref().map_or(false, LevelBuffer::is_empty);
        if d == ReplayDecision::Replay && (empty(&self.buffer) || empty(&self.antagonist_buffer)) {
            self.counters.empty_buffer_fallbacks += 1;
            return ReplayDecision::Generate;
        }
        d
    }

    /// Score a level for one buffer and insert it, tracking its best return.
    fn curate(
        &self,
        buffer: &mut LevelBuffer,
        level: &MazeLevel,
        traj: &Trajectory,
        best_seen: f64,
    ) -> Result<f64> {
        let c = self.counters.episodes;
        let r_max = buffer.max_return(level).map_or(best_seen, |m| m.max(best_seen));
        let score = self.score(level, traj, r_max)?;
        buffer.update(level.clone(), score, c, &self.config.replay);
        buffer.record_return(level, r_max);
        Ok(score)
    }

    fn sample_from(&mut self, antagonist: bool) -> Result<MazeLevel> {
        let c = self.counters.episodes;
        let buffer = if antagonist { &self.antagonist_buffer } else { &self.buffer };
        let buffer = buffer.as_ref().ok_or(CoreError::EmptyBuffer)?;
        Ok(buffer.sample_replay(&self.config.replay, c, &mut self.buffer_rng)?.clone())
    }

    fn plr_episode(&mut self, robust: bool) -> Result<EpisodeSummary> {
        let kind = self.decide();
        let (level, mode) = match kind {
            ReplayDecision::Generate => {
                let level = generate_random_design(&mut self.level_rng, self.config.template)?;
                (level, if robust { RolloutMode::Eval } else { RolloutMode::Train })
            }
            ReplayDecision::Replay => (self.sample_from(false)?, RolloutMode::Train),
        };
        let before = self.protagonist.fingerprint();
        let traj = self.protagonist.rollout(&level, &self.config.env, mode, &mut self.protagonist_rng);
        let ret = traj.episode_return();
        let mut buffer = self.buffer.take().ok_or(CoreError::EmptyBuffer)?;
        let score = self.curate(&mut buffer, &level, &traj, ret);
        self.buffer = Some(buffer);
        let score = score?;
        let trained = mode == RolloutMode::Train;
        if trained {
            self.train_protagonist(&level, &traj)?;
        } else {
            self.audit_stop_gradient(before, None)?;
        }
        Ok(EpisodeSummary {
            kind,
            level,
            protagonist_return: ret,
            antagonist_return: None,
            protagonist_trained: trained,
            antagonist_trained: false,
            protagonist_score: Some(score),
            generator_reward: None,
        })
    }

    fn audit_stop_gradient(&mut self, protagonist_before: u64, antagonist_before: Option<u64>) -> Result<()> {
        let changed = self.protagonist.fingerprint() != protagonist_before
            || antagonist_before.zip(self.antagonist.as_ref()).map_or(false, |(h, a)| a.fingerprint() != h);
        if changed {
            return Err(CoreError::Contract(format!(
                "student parameters changed on stop-gradient episode {}",
                self.counters.episodes
            )));
        }
        self.counters.stop_gradient_checks += 1;
        Ok(())
    }

    fn design(&mut self) -> Result<(MazeLevel, super::DesignTrajectory)> {
        let g = self.generator.as_ref().ok_or_else(|| CoreError::Config("algorithm has no generator".into()))?;
        g.design(self.config.template, &mut self.teacher_rng)
    }

    fn update_generator(&mut self, traj: &super::DesignTrajectory, reward: f64) {
        if let Some(g) = self.generator.as_mut() {
            g.update(traj, reward);
            self.counters.generator_updates += 1;
        }
    }

    fn paired_episode(&mut self) -> Result<EpisodeSummary> {
        let (level, design) = self.design()?;
        let env = self.config.env;
        let ta = self.protagonist.rollout(&level, &env, RolloutMode::Train, &mut self.protagonist_rng);
        let ant = self.antagonist.as_mut().ok_or_else(|| CoreError::Config("PAIRED needs an antagonist".into()))?;
        let tb = ant.rollout(&level, &env, RolloutMode::Train, &mut self.antagonist_rng);
        ant.train_on(&tb)?;
        self.counters.antagonist_updates += 1;
        self.train_protagonist(&level, &ta)?;
        let reward = estimate_regret_paired(ta.episode_return(), tb.episode_return());
        self.update_generator(&design, reward);
        Ok(EpisodeSummary {
            kind: ReplayDecision::Generate,
            level,
            protagonist_return: ta.episode_return(),
            antagonist_return: Some(tb.episode_return()),
            protagonist_trained: true,
            antagonist_trained: true,
            protagonist_score: None,
            generator_reward: Some(reward),
        })
    }

    fn minimax_episode(&mut self) -> Result<EpisodeSummary> {
        let (level, design) = self.design()?;
        let ta = self.protagonist.rollout(&level, &self.config.env, RolloutMode::Train, &mut self.protagonist_rng);
        self.train_protagonist(&level, &ta)?;
        let reward = -ta.episode_return();
        self.update_generator(&design, reward);
        Ok(EpisodeSummary {
            kind: ReplayDecision::Generate,
            level,
            protagonist_return: ta.episode_return(),
            antagonist_return: None,
            protagonist_trained: true,
            antagonist_trained: false,
            protagonist_score: None,
            generator_reward: Some(reward),
        })
    }

    fn repaired_episode(&mut self) -> Result<EpisodeSummary> {
        let env = self.config.env;
        let kind = self.decide();
        match kind {
            ReplayDecision::Generate => {
                let (level, design) = self.design()?;
                let before_a = self.protagonist.fingerprint();
                let ant = self.antagonist.as_ref().ok_or_else(|| CoreError::Config("REPAIRED needs an antagonist".into()))?;
                let before_b = ant.fingerprint();
                let tb = ant.rollout(&level, &env, RolloutMode::Eval, &mut self.antagonist_rng);
                let ta = self.protagonist.rollout(&level, &env, RolloutMode::Eval, &mut self.protagonist_rng);
                let (ra, rb) = (ta.episode_return(), tb.episode_return());
                let reward = estimate_regret_paired(ra, rb);
                self.update_generator(&design, reward);
                let best = ra.max(rb);
                let mut buf_a = self.buffer.take().ok_or(CoreError::EmptyBuffer)?;
                let mut buf_b = self.antagonist_buffer.take().ok_or(CoreError::EmptyBuffer)?;
                let sa = self.curate(&mut buf_a, &level, &ta, best);
                let sb = self.curate(&mut buf_b, &level, &tb, best);
                self.buffer = Some(buf_a);
                self.antagonist_buffer = Some(buf_b);
                let score = sa?;
                sb?;
                self.audit_stop_gradient(before_a, Some(before_b))?;
                Ok(EpisodeSummary {
                    kind,
                    level,
                    protagonist_return: ra,
                    antagonist_return: Some(rb),
                    protagonist_trained: false,
                    antagonist_trained: false,
                    protagonist_score: Some(score),
                    generator_reward: Some(reward),
                })
            }
            ReplayDecision::Replay => {
                let la = self.sample_from(false)?;
                let lb = self.sample_from(true)?;
                let ta = self.protagonist.rollout(&la, &env, RolloutMode::Train, &mut self.protagonist_rng);
                let ant = self.antagonist.as_ref().ok_or_else(|| CoreError::Config("REPAIRED needs an antagonist".into()))?;
                let tb = ant.rollout(&lb, &env, RolloutMode::Train, &mut self.antagonist_rng);
                let mut buf_a = self.buffer.take().ok_or(CoreError::EmptyBuffer)?;
                let mut buf_b = self.antagonist_buffer.take().ok_or(CoreError::EmptyBuffer)?;
                let sa = self.curate(&mut buf_a, &la, &ta, ta.episode_return());
                let sb = self.curate(&mut buf_b, &lb, &tb, tb.episode_return());
                self.buffer = Some(buf_a);
                self.antagonist_buffer = Some(buf_b);
                let score = sa?;
                sb?;
                self.train_protagonist(&la, &ta)?;
                if let Some(ant) = self.antagonist.as_mut() {
                    ant.train_on(&tb)?;
                }
                self.counters.antagonist_updates += 1;
                Ok(EpisodeSummary {
                    kind,
                    level: la,
                    protagonist_return: ta.episode_return(),
                    antagonist_return: Some(tb.episode_return()),
                    protagonist_trained: true,
                    antagonist_trained: true,
                    protagonist_score: Some(score),
                    generator_reward: None,
                })
            }
        }
    }

    fn dr_episode(&mut self) -> Result<EpisodeSummary> {
        let level = generate_random_design(&mut self.level_rng, self.config.template)?;
        let t = self.protagonist.rollout(&level, &self.config.env, RolloutMode::Train, &mut self.protagonist_rng);
        self.train_protagonist(&level, &t)?;
        Ok(EpisodeSummary {
            kind: ReplayDecision::Generate,
            level,
            protagonist_return: t.episode_return(),
            antagonist_return: None,
            protagonist_trained: true,
            antagonist_trained: false,
            protagonist_score: None,
            generator_reward: None,
        })
    }

    /// Run one episode of the configured algorithm.
    pub fn step(&mut self) -> Result<EpisodeSummary> {
        if self.finished() {
            return Err(CoreError::Contract("episode budget exhausted".into()));
        }
        let summary = match self.config.algorithm {
            Algorithm::DomainRandomization => self.dr_episode(),
            Algorithm::Plr => self.plr_episode(false),
            Algorithm::RobustPlr => self.plr_episode(true),
            Algorithm::Paired => self.paired_episode(),
            Algorithm::Repaired => self.repaired_episode(),
            Algorithm::Minimax => self.minimax_episode(),
        }?;
        match summary.kind {
            ReplayDecision::Generate => self.counters.generate_episodes += 1,
            ReplayDecision::Replay => self.counters.replay_episodes += 1,
        }
        self.counters.episodes += 1;
        Ok(summary)
    }

    /// Evaluate the protagonist on every suite and append one row per suite
    /// plus a `train` row summarizing the interval's training levels.
    pub fn evaluate(&mut self) -> &[MetricsRow] {
        let first = self.metrics.len();
        let episode = self.counters.episodes;
        let updates = self.counters.student_updates;
        let (buffer_size, mean_buffer_score) =
            self.buffer.as_ref().map_or((0, None), |b| (b.len(), b.mean_score()));
        let row = |suite: &str, s: &ComplexitySummary, rate: Option<f64>| MetricsRow {
            episode,
            updates,
            suite: suite.to_string(),
            solved_rate: rate,
            block_count: s.block_count_mean(),
            shortest_path: s.shortest_path_mean(),
            solved_path_mean: s.solved_path_mean(),
            action_lzw_mean: s.action_lzw_mean(),
            buffer_size,
            mean_buffer_score,
        };
        self.metrics.push(row("train", &self.interval, self.interval.solved_rate()));
        self.interval = ComplexitySummary::default();
        let mut rng = eval_rng(self.config.seed, episode);
        self.final_rates.clear();
        for suite in &self.suites {
            let e = evaluate_suite(&self.protagonist, suite, &self.config.env, self.config.eval.mode, &mut rng);
            self.final_rates.insert(suite.name.clone(), e.rates.aggregate);
            self.metrics.push(row(&suite.name, &e.complexity, Some(e.rates.aggregate)));
        }
        &self.metrics[first..]
    }

    pub fn report(&self) -> RunReport {
        let n = self.final_rates.len();
        RunReport {
            algorithm: self.config.algorithm,
            seed: self.config.seed,
            counters: self.counters,
            metrics: self.metrics.clone(),
            final_solved_rates: self.final_rates.clone(),
            final_mean_solved_rate: if n == 0 { 0.0 } else { self.final_rates.values().sum::<f64>() / n as f64 },
        }
    }
}

/// Run to completion, calling `on_eval` after every evaluation.
pub fn run_dcd_with<F, E>(config: DcdConfig, mut on_eval: F) -> std::result::Result<RunReport, E>
where
    F: FnMut(&DcdRun) -> std::result::Result<(), E>,
    E: From<CoreError>,
{
    let interval = config.eval_interval;
    let mut run = DcdRun::new(config)?;
    while !run.finished() {
        run.step()?;
        if interval > 0 && run.episode() % interval == 0 && !run.finished() {
            run.evaluate();
            on_eval(&run)?;
        }
    }
    run.evaluate();
    on_eval(&run)?;
    Ok(run.report())
}

pub fn run_dcd(config: DcdConfig) -> Result<RunReport> {
    run_dcd_with(config, |_| Ok::<(), CoreError>(()))
}
