//! The four-way exploration comparison: per-(algorithm, seed) trajectory
//! files, a per-run summary, and an aggregate mean-gain curve.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use curiosity_core::baselines::{explore_greedy, explore_qlearning, explore_random, QLearnParams};
use curiosity_core::env::{make_clique_corridor, EnvSpec};
use curiosity_core::planner::{explore_dp_with, SolveOptions};
use curiosity_core::posterior::PosteriorTable;
use curiosity_core::trajectory::TrajectoryLog;

use crate::config::{Algo, ExperimentConfig};
use crate::error::Result;
use crate::metadata::{config_hash, metadata_line};

/// Which region of the clique-corridor chain a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    CliqueA,
    Corridor,
    CliqueB,
}

/// State-space layout of a generated clique-corridor environment.
#[derive(Debug, Clone, Copy)]
pub struct CliqueGeometry {
    pub clique_size: usize,
    pub corridor_len: usize,
}

impl CliqueGeometry {
    fn region(&self, s: usize) -> Region {
        if s < self.clique_size {
            Region::CliqueA
        } else if s < self.clique_size + self.corridor_len {
            Region::Corridor
        } else {
            Region::CliqueB
        }
    }
}

/// Occupancy and traversal statistics of one trajectory.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RunStats {
    /// Number of times the agent's most recent clique flipped (A→B or B→A).
    pub corridor_crossings: usize,
    /// Fraction of steps whose current state lay in the initial clique.
    pub frac_initial_clique: f64,
    /// As above, but also counting the adjacent corridor entrance state.
    pub frac_initial_with_entrance: f64,
    /// Fraction of steps spent in the far clique.
    pub frac_far_clique: f64,
}

/// Crossing and occupancy statistics over a log's visited states.
pub fn run_stats(log: &TrajectoryLog, geometry: &CliqueGeometry) -> RunStats {
    let steps = log.len().max(1) as f64;
    let entrance = geometry.clique_size; // first corridor state, adjacent to clique A
    let mut in_a = 0usize;
    let mut in_a_or_entrance = 0usize;
    let mut in_b = 0usize;
    let mut crossings = 0usize;
    let mut last_clique = Region::CliqueA;
    if let Some(first) = log.steps.first() {
        if geometry.region(first.state) == Region::CliqueB {
            last_clique = Region::CliqueB;
        }
    }
    for record in &log.steps {
        match geometry.region(record.state) {
            Region::CliqueA => {
                in_a += 1;
                in_a_or_entrance += 1;
            }
            Region::CliqueB => in_b += 1,
            Region::Corridor => {
                if record.state == entrance {
                    in_a_or_entrance += 1;
                }
            }
        }
        match geometry.region(record.next_state) {
            Region::CliqueA if last_clique == Region::CliqueB => {
                crossings += 1;
                last_clique = Region::CliqueA;
            }
            Region::CliqueB if last_clique == Region::CliqueA => {
                crossings += 1;
                last_clique = Region::CliqueB;
            }
            _ => {}
        }
    }
    RunStats {
        corridor_crossings: crossings,
        frac_initial_clique: in_a as f64 / steps,
        frac_initial_with_entrance: in_a_or_entrance as f64 / steps,
        frac_far_clique: in_b as f64 / steps,
    }
}

/// Summary of one (algorithm, seed) run.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub algo: Algo,
    pub seed: u64,
    pub final_cumulative_gain: f64,
    #[serde(flatten)]
    pub stats: RunStats,
}

/// Everything produced by [`run_experiment`], with the written file paths.
pub struct ExperimentReport {
    pub runs: Vec<RunSummary>,
    pub logs: Vec<(Algo, u64, TrajectoryLog)>,
    pub files: Vec<PathBuf>,
}

/// The configuration fields that determine file contents; the output
/// directory is deliberately excluded so reruns into different locations
/// stay byte-identical.
#[derive(Serialize)]
struct SemanticConfig<'a> {
    clique_size: usize,
    corridor: usize,
    prior_count: f64,
    steps: usize,
    gamma: f64,
    seeds: &'a [u64],
    algos: &'a [Algo],
    qlearn_learning_rate: f64,
    qlearn_epsilon: f64,
    qlearn_gamma: Option<f64>,
    qlearn_init_q: f64,
    tol: f64,
    env_file: Option<String>,
}

fn semantic_hash(config: &ExperimentConfig) -> String {
    config_hash(&SemanticConfig {
        clique_size: config.clique_size,
        corridor: config.corridor,
        prior_count: config.prior_count,
        steps: config.steps,
        gamma: config.gamma,
        seeds: &config.seeds,
        algos: &config.algos,
        qlearn_learning_rate: config.qlearn.learning_rate,
        qlearn_epsilon: config.qlearn.epsilon,
        qlearn_gamma: config.qlearn.gamma,
        qlearn_init_q: config.qlearn.init_q,
        tol: config.tol,
        env_file: config.env_file.as_ref().map(|p| p.display().to_string()),
    })
}

#[derive(Serialize)]
struct TrajectoryMeta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config_hash: &'a str,
    algo: &'static str,
    seed: u64,
    gamma: f64,
    prior_count: f64,
    steps: usize,
    env: String,
}

#[derive(Serialize)]
struct FileMeta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config_hash: &'a str,
    gamma: f64,
    seeds: &'a [u64],
}

fn run_one(
    config: &ExperimentConfig,
    fixed_env: Option<&EnvSpec>,
    algo: Algo,
    seed: u64,
) -> Result<(TrajectoryLog, String)> {
    let generated;
    let (env, env_desc) = match fixed_env {
        Some(env) => (
            env,
            config
                .env_file
                .as_ref()
                .map_or_else(|| "file".to_string(), |p| format!("file:{}", p.display())),
        ),
        None => {
            generated = make_clique_corridor(config.clique_size, config.corridor, seed)?;
            (&generated, format!("clique-corridor:seed={seed}"))
        }
    };
    let table = PosteriorTable::new_uniform(env.s_count(), env.a_count(), config.prior_count)?;
    let result = match algo {
        Algo::Random => explore_random(env, &table, config.steps, seed)?,
        Algo::Greedy => explore_greedy(env, &table, config.steps, seed)?,
        Algo::Qlearn => {
            let params = QLearnParams {
                learning_rate: config.qlearn.learning_rate,
                epsilon: config.qlearn.epsilon,
                gamma: config.qlearn.gamma.unwrap_or(config.gamma),
                init_q: config.qlearn.init_q,
            };
            explore_qlearning(env, &table, &params, config.steps, seed)?
        }
        Algo::Dp => {
            let options = SolveOptions {
                tol: config.tol,
                ..SolveOptions::default()
            };
            explore_dp_with(env, &table, config.gamma, config.steps, seed, &options)?
        }
    };
    Ok((result.log, env_desc))
}

fn trajectory_csv(
    config: &ExperimentConfig,
    hash: &str,
    algo: Algo,
    seed: u64,
    env_desc: &str,
    log: &TrajectoryLog,
) -> String {
    let meta = TrajectoryMeta {
        tool: "curiosity",
        version: curiosity_core::VERSION,
        command: "run",
        config_hash: hash,
        algo: algo.name(),
        seed,
        gamma: config.gamma,
        prior_count: config.prior_count,
        steps: config.steps,
        env: env_desc.to_string(),
    };
    let mut out = metadata_line(&meta);
    out.push_str("t,state,action,next_state,realized_gain,cumulative_gain\n");
    for r in &log.steps {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.t, r.state, r.action, r.next_state, r.realized_gain, r.cumulative_gain
        ));
    }
    out
}

/// Runs every configured (algorithm, seed) pair, writes one trajectory CSV per
/// run plus `summary.csv` and `aggregate.csv`, and returns the summaries.
/// Independent runs execute on worker threads; outputs are assembled in
/// deterministic configuration order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let started = Instant::now();
    let hash = semantic_hash(config);
    fs::create_dir_all(&config.out)?;
    let fixed_env = match &config.env_file {
        Some(path) => Some(EnvSpec::from_text(&fs::read_to_string(path)?)?),
        None => None,
    };
    let geometry = CliqueGeometry {
        clique_size: config.clique_size,
        corridor_len: config.corridor,
    };

    let pairs: Vec<(Algo, u64)> = config
        .algos
        .iter()
        .flat_map(|&algo| config.seeds.iter().map(move |&seed| (algo, seed)))
        .collect();
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(pairs.len().max(1));
    let mut outcomes: Vec<Result<(TrajectoryLog, String)>> = Vec::with_capacity(pairs.len());
    for chunk in pairs.chunks(workers) {
        let chunk_results: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&(algo, seed)| {
                    let config = &config;
                    let fixed_env = fixed_env.as_ref();
                    scope.spawn(move || run_one(config, fixed_env, algo, seed))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("run thread"))
                .collect()
        });
        outcomes.extend(chunk_results);
    }

    let mut files = Vec::new();
    let mut runs = Vec::new();
    let mut logs = Vec::new();
    for ((algo, seed), outcome) in pairs.into_iter().zip(outcomes) {
        let (log, env_desc) = outcome?;
        let path = config.out.join(format!("{}_seed{}.csv", algo.name(), seed));
        fs::write(
            &path,
            trajectory_csv(config, &hash, algo, seed, &env_desc, &log),
        )?;
        files.push(path);
        let stats = if fixed_env.is_none() {
            run_stats(&log, &geometry)
        } else {
            // Geometry-based statistics are meaningful only for the built-in
            // generator.
            RunStats {
                corridor_crossings: 0,
                frac_initial_clique: f64::NAN,
                frac_initial_with_entrance: f64::NAN,
                frac_far_clique: f64::NAN,
            }
        };
        runs.push(RunSummary {
            algo,
            seed,
            final_cumulative_gain: log.final_cumulative_gain(),
            stats,
        });
        logs.push((algo, seed, log));
    }

    // summary.csv: one line per run.
    let file_meta = FileMeta {
        tool: "curiosity",
        version: curiosity_core::VERSION,
        command: "run-summary",
        config_hash: &hash,
        gamma: config.gamma,
        seeds: &config.seeds,
    };
    let mut summary = metadata_line(&file_meta);
    summary.push_str(
        "algo,seed,final_cumulative_gain,corridor_crossings,frac_initial_clique,frac_initial_with_entrance,frac_far_clique\n",
    );
    for run in &runs {
        summary.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            run.algo.name(),
            run.seed,
            run.final_cumulative_gain,
            run.stats.corridor_crossings,
            run.stats.frac_initial_clique,
            run.stats.frac_initial_with_entrance,
            run.stats.frac_far_clique
        ));
    }
    let summary_path = config.out.join("summary.csv");
    fs::write(&summary_path, summary)?;
    files.push(summary_path);

    // aggregate.csv: mean cumulative gain per step, one column per algorithm.
    let agg_meta = FileMeta {
        command: "run-aggregate",
        ..file_meta
    };
    let mut aggregate = metadata_line(&agg_meta);
    aggregate.push('t');
    for algo in &config.algos {
        aggregate.push(',');
        aggregate.push_str(algo.name());
    }
    aggregate.push('\n');
    let seeds = config.seeds.len() as f64;
    for t in 0..config.steps {
        aggregate.push_str(&(t + 1).to_string());
        for algo in &config.algos {
            let mean: f64 = logs
                .iter()
                .filter(|(a, _, _)| a == algo)
                .map(|(_, _, log)| log.steps[t].cumulative_gain)
                .sum::<f64>()
                / seeds;
            aggregate.push(',');
            aggregate.push_str(&mean.to_string());
        }
        aggregate.push('\n');
    }
    let aggregate_path = config.out.join("aggregate.csv");
    fs::write(&aggregate_path, aggregate)?;
    files.push(aggregate_path);

    eprintln!(
        "run: {} trajectories in {:.1} s -> {}",
        runs.len(),
        started.elapsed().as_secs_f64(),
        config.out.display()
    );
    Ok(ExperimentReport { runs, logs, files })
}

#[cfg(test)]
mod tests {
    use super::*;
    use curiosity_core::trajectory::StepRecord;

    fn record(t: usize, state: usize, next_state: usize) -> StepRecord {
        StepRecord {
            t,
            state,
            action: 0,
            next_state,
            realized_gain: 0.0,
            cumulative_gain: 0.0,
        }
    }

    #[test]
    fn crossing_counter_tracks_clique_flips() {
        let geometry = CliqueGeometry {
            clique_size: 2,
            corridor_len: 3,
        };
        // States: A = {0,1}, corridor = {2,3,4}, B = {5,6}.
        let walk = [0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1, 0, 1];
        let log = TrajectoryLog {
            steps: walk
                .windows(2)
                .enumerate()
                .map(|(i, w)| record(i + 1, w[0], w[1]))
                .collect(),
        };
        let stats = run_stats(&log, &geometry);
        assert_eq!(stats.corridor_crossings, 2);
        // Steps with state in A: indices 0,1,11,12 of 13 records.
        assert!((stats.frac_initial_clique - 4.0 / 13.0).abs() < 1e-12);
        // Entrance state is 2; states 0,1,2 count: indices 0,1,2,10,11,12.
        assert!((stats.frac_initial_with_entrance - 6.0 / 13.0).abs() < 1e-12);
        // States in B = {5,6}: indices 5,6,7 of the state column.
        assert!((stats.frac_far_clique - 3.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn corridor_dips_do_not_count_as_crossings() {
        let geometry = CliqueGeometry {
            clique_size: 2,
            corridor_len: 3,
        };
        let walk = [0, 1, 2, 3, 2, 1, 2, 3, 4, 3, 2, 0];
        let log = TrajectoryLog {
            steps: walk
                .windows(2)
                .enumerate()
                .map(|(i, w)| record(i + 1, w[0], w[1]))
                .collect(),
        };
        assert_eq!(run_stats(&log, &geometry).corridor_crossings, 0);
    }
}
