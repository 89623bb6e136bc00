//! Experiment harness for the curiosity exploration library: the four-way
//! strategy comparison on the clique-corridor chain, the gain-vs-sum
//! demonstration, and the exact-vs-DP error study. All output is CSV with a
//! `#`-prefixed JSON metadata line; identical configurations reproduce files
//! byte-for-byte.

pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod fig1;
pub mod metadata;

pub use compare::{compare_csv, compare_exact_vs_dp, CompareRow};
pub use config::{parse_algos, parse_f64_list, parse_seeds, Algo, ExperimentConfig, QLearnConfig};
pub use error::{CliError, Result};
pub use experiment::{run_experiment, run_stats, CliqueGeometry, ExperimentReport, RunSummary};
pub use fig1::{fig1_csv, fig1_demo, Fig1Row};
