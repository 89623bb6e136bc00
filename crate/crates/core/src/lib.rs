//! Optimal Bayesian exploration in unknown dynamic environments.
//!
//! The library measures learning progress as information gain (KL divergence
//! between successive posteriors) and plans to maximize its expected
//! accumulation: exact finite-horizon curiosity planners over generic
//! finite-hypothesis models, a Dirichlet-MDP specialization with a
//! dynamic-programming approximation, baseline explorers, and the simulators
//! needed to compare them.

pub mod baselines;
pub mod bayes;
pub mod env;
pub mod error;
pub mod info_geometry;
pub mod planner;
pub mod posterior;
pub mod special;
pub mod trajectory;

pub use error::{Error, Result};

/// Library version, embedded in experiment output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
