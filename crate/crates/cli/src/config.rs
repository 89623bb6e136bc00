//! Experiment configuration: JSON-loadable, flag-overridable.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The four exploration strategies the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Random,
    Greedy,
    Qlearn,
    Dp,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Random, Algo::Greedy, Algo::Qlearn, Algo::Dp];

    pub fn name(&self) -> &'static str {
        match self {
            Algo::Random => "random",
            Algo::Greedy => "greedy",
            Algo::Qlearn => "qlearn",
            Algo::Dp => "dp",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "random" => Ok(Algo::Random),
            "greedy" => Ok(Algo::Greedy),
            "qlearn" => Ok(Algo::Qlearn),
            "dp" => Ok(Algo::Dp),
            other => Err(CliError::Config(format!(
                "unknown algorithm {other:?} (expected random, greedy, qlearn, or dp)"
            ))),
        }
    }
}

/// Q-learning baseline settings. A missing `gamma` inherits the experiment
/// discount.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct QLearnConfig {
    pub learning_rate: f64,
    pub epsilon: f64,
    pub gamma: Option<f64>,
    pub init_q: f64,
}

impl Default for QLearnConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.5,
            epsilon: 0.01,
            gamma: None,
            init_q: 0.0,
        }
    }
}

/// Full configuration of the four-way comparison experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub clique_size: usize,
    pub corridor: usize,
    /// Uniform Dirichlet prior pseudo-count per table entry.
    pub prior_count: f64,
    pub steps: usize,
    pub gamma: f64,
    pub seeds: Vec<u64>,
    pub algos: Vec<Algo>,
    pub qlearn: QLearnConfig,
    /// Bellman solver tolerance for the dp algorithm.
    pub tol: f64,
    /// Load the environment from this text file instead of generating a
    /// clique-corridor per seed.
    pub env_file: Option<PathBuf>,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            clique_size: 5,
            corridor: 50,
            prior_count: 1.0 / 60.0,
            steps: 4000,
            gamma: 0.95,
            seeds: (1..=10).collect(),
            algos: Algo::ALL.to_vec(),
            qlearn: QLearnConfig::default(),
            tol: 1e-10,
            env_file: None,
            out: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(CliError::Config("steps must be at least 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(CliError::Config("at least one seed is required".into()));
        }
        if self.algos.is_empty() {
            return Err(CliError::Config(
                "at least one algorithm is required".into(),
            ));
        }
        let mut seen = Vec::new();
        for algo in &self.algos {
            if seen.contains(algo) {
                return Err(CliError::Config(format!(
                    "algorithm {} listed twice",
                    algo.name()
                )));
            }
            seen.push(*algo);
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(CliError::Config(format!(
                "gamma must lie in [0, 1), got {}",
                self.gamma
            )));
        }
        if !self.prior_count.is_finite() || self.prior_count <= 0.0 {
            return Err(CliError::Config(format!(
                "prior count must be positive, got {}",
                self.prior_count
            )));
        }
        if self.env_file.is_none() && (self.clique_size == 0 || self.corridor == 0) {
            return Err(CliError::Config(
                "clique size and corridor length must be positive".into(),
            ));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(CliError::Config(format!(
                "solver tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Parses a seed specification: either an inclusive range `1..10` or a
/// comma-separated list `1,4,9`.
pub fn parse_seeds(spec: &str) -> Result<Vec<u64>> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|e| CliError::Config(format!("bad seed range start {lo:?}: {e}")))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|e| CliError::Config(format!("bad seed range end {hi:?}: {e}")))?;
        if hi < lo {
            return Err(CliError::Config(format!("empty seed range {spec:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Config(format!("bad seed {tok:?}: {e}")))
        })
        .collect()
}

/// Parses a comma-separated list of reals (probability vectors, scale sweeps).
pub fn parse_f64_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Config(format!("bad number {tok:?}: {e}")))
        })
        .collect()
}

/// Parses a comma-separated algorithm list.
pub fn parse_algos(spec: &str) -> Result<Vec<Algo>> {
    spec.split(',').map(|tok| tok.parse()).collect()
}
