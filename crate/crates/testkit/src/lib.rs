//! Independent numerical oracles used by the test suites.
//!
//! Everything here deliberately avoids the code paths it is used to check:
//! special functions come from their defining series, divergences from
//! Monte-Carlo sampling, and planning values from brute-force enumeration.

mod enumeration;
mod fixtures;
mod mc;
mod series;
mod solver;

pub use enumeration::{
    enumerate_policy_q_values, enumerate_policy_v_values, fixed_policy_q,
    max_marginal_terminal_gain, terminal_gain_expectation,
};
pub use fixtures::fixture_models;
pub use mc::{mc_kl_dirichlet, mc_mutual_information};
pub use series::{digamma_series_oracle, ln_gamma_half_quadrature, ln_gamma_stirling_oracle};
pub use solver::bellman_q_oracle;
