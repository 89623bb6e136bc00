//! Planning on a Dirichlet posterior: the stationary Bellman approximation
//! (posterior frozen), a depth-truncated evaluation of the exact
//! posterior-propagating recursion, and the resulting exploration loop.
//!
//! The two solvers differ in exactly one respect: [`exact_q_depth`] updates
//! the count table along every hypothetical branch, while [`solve_dp`] holds
//! it fixed. The gap between them is the approximation error this module's
//! callers measure.

use crate::env::{step, EnvSpec, RngStream};
use crate::error::{Error, Result};
use crate::info_geometry::expected_info_gain_raw;
use crate::posterior::{PosteriorTable, TableStats};
use crate::trajectory::{ExploreResult, StepRecorder};

/// Node cap for the exponential depth-truncated recursion.
pub const EXACT_DEPTH_NODE_BUDGET: f64 = 1e8;

/// Solved per-(state, action) values, in nats.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    s_count: usize,
    a_count: usize,
    gamma: f64,
    values: Vec<f64>,
}

impl QTable {
    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn value(&self, s: usize, a: usize) -> f64 {
        self.values[s * self.a_count + a]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// max_a q(s, a).
    pub fn state_value(&self, s: usize) -> f64 {
        (0..self.a_count)
            .map(|a| self.value(s, a))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Lowest-index maximizing action at `s`.
    pub fn greedy_action(&self, s: usize) -> usize {
        let mut best = 0;
        let mut best_value = f64::NEG_INFINITY;
        for a in 0..self.a_count {
            let v = self.value(s, a);
            if v > best_value {
                best_value = v;
                best = a;
            }
        }
        best
    }
}

/// A deterministic state → action map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Policy {
    actions: Vec<usize>,
}

impl Policy {
    pub fn action(&self, s: usize) -> usize {
        self.actions[s]
    }

    pub fn actions(&self) -> &[usize] {
        self.actions.as_slice()
    }
}

/// Iteration controls for the Bellman solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Sup-norm update threshold; the returned table's Bellman residual is
    /// below this.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iterations: 200_000,
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "discount must lie in [0, 1), got {gamma}"
        )));
    }
    Ok(())
}

/// Value iteration on q(s,a) = gains[s,a] + γ Σ_{s'} kernel[s,a,s'] max_{a'} q(s',a').
///
/// `gains` is indexed by s·A + a and `kernel` by (s·A + a)·S + s'. Starts from
/// `warm` when provided.
pub fn solve_bellman(
    gains: &[f64],
    kernel: &[f64],
    s_count: usize,
    a_count: usize,
    gamma: f64,
    options: &SolveOptions,
    warm: Option<&QTable>,
) -> Result<QTable> {
    check_gamma(gamma)?;
    if options.tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let pairs = s_count * a_count;
    if gains.len() != pairs || kernel.len() != pairs * s_count {
        return Err(Error::ShapeMismatch(
            "gain vector or kernel does not match S×A".into(),
        ));
    }
    let mut q = match warm {
        Some(w) => {
            if w.s_count != s_count || w.a_count != a_count {
                return Err(Error::ShapeMismatch("warm start has wrong shape".into()));
            }
            w.values.clone()
        }
        None => vec![0.0; pairs],
    };
    let mut state_values = vec![0.0f64; s_count];
    let mut next = vec![0.0f64; pairs];
    for iteration in 1..=options.max_iterations {
        for (s, sv) in state_values.iter_mut().enumerate() {
            *sv = (0..a_count)
                .map(|a| q[s * a_count + a])
                .fold(f64::NEG_INFINITY, f64::max);
        }
        let mut delta = 0.0f64;
        for pair in 0..pairs {
            let row = &kernel[pair * s_count..(pair + 1) * s_count];
            let mut value = 0.0;
            for (p, sv) in row.iter().zip(&state_values) {
                value += p * sv;
            }
            value = gains[pair] + gamma * value;
            delta = delta.max((value - q[pair]).abs());
            next[pair] = value;
        }
        std::mem::swap(&mut q, &mut next);
        if delta <= options.tol {
            return Ok(QTable {
                s_count,
                a_count,
                gamma,
                values: q,
            });
        }
        if iteration == options.max_iterations {
            return Err(Error::NoConvergence {
                iterations: iteration,
                residual: delta,
                tol: options.tol,
            });
        }
    }
    unreachable!("loop either returns or errors")
}

fn gains_and_kernel(table: &PosteriorTable) -> (Vec<f64>, Vec<f64>) {
    let (s_count, a_count) = (table.s_count(), table.a_count());
    let mut gains = Vec::with_capacity(s_count * a_count);
    let mut kernel = Vec::with_capacity(s_count * a_count * s_count);
    for s in 0..s_count {
        for a in 0..a_count {
            let row = table.row(s, a).expect("in range");
            let total: f64 = row.iter().sum();
            gains.push(expected_info_gain_raw(row));
            kernel.extend(row.iter().map(|c| c / total));
        }
    }
    (gains, kernel)
}

/// Solves the stationary Bellman equation on the posterior: rewards are the
/// per-pair expected gains, the kernel is the predictive, and the posterior
/// stays frozen.
pub fn solve_dp(table: &PosteriorTable, gamma: f64, tol: f64) -> Result<QTable> {
    let options = SolveOptions {
        tol,
        ..SolveOptions::default()
    };
    solve_dp_with(table, gamma, &options, None)
}

pub fn solve_dp_with(
    table: &PosteriorTable,
    gamma: f64,
    options: &SolveOptions,
    warm: Option<&QTable>,
) -> Result<QTable> {
    let (gains, kernel) = gains_and_kernel(table);
    solve_bellman(
        &gains,
        &kernel,
        table.s_count(),
        table.a_count(),
        gamma,
        options,
        warm,
    )
}

/// Gaussian elimination with partial pivoting; `matrix` is n×n row-major.
fn solve_linear(mut matrix: Vec<f64>, mut rhs: Vec<f64>) -> Vec<f64> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                matrix[i * n + col]
                    .abs()
                    .partial_cmp(&matrix[j * n + col].abs())
                    .expect("finite")
            })
            .expect("non-empty");
        if pivot != col {
            for k in 0..n {
                matrix.swap(col * n + k, pivot * n + k);
            }
            rhs.swap(col, pivot);
        }
        let diag = matrix[col * n + col];
        for row in col + 1..n {
            let factor = matrix[row * n + col] / diag;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                matrix[row * n + k] -= factor * matrix[col * n + k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut solution = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= matrix[row * n + k] * solution[k];
        }
        solution[row] = acc / matrix[row * n + row];
    }
    solution
}

/// Policy iteration with exact policy evaluation; solves the same fixed point
/// as [`solve_dp`] and exists as its cross-check and fast path.
pub fn solve_dp_policy_iteration(table: &PosteriorTable, gamma: f64) -> Result<QTable> {
    check_gamma(gamma)?;
    let (s_count, a_count) = (table.s_count(), table.a_count());
    let (gains, kernel) = gains_and_kernel(table);
    let greedy_from = |q: &[f64]| -> Vec<usize> {
        (0..s_count)
            .map(|s| {
                let mut best = 0;
                let mut best_value = f64::NEG_INFINITY;
                for a in 0..a_count {
                    let v = q[s * a_count + a];
                    if v > best_value {
                        best_value = v;
                        best = a;
                    }
                }
                best
            })
            .collect()
    };
    let mut policy = greedy_from(&gains);
    for iteration in 1..=10_000 {
        // Evaluate: (I − γ P_π) v = g_π.
        let mut matrix = vec![0.0f64; s_count * s_count];
        let mut rhs = vec![0.0f64; s_count];
        for s in 0..s_count {
            let pair = s * a_count + policy[s];
            rhs[s] = gains[pair];
            for s2 in 0..s_count {
                let p = kernel[pair * s_count + s2];
                matrix[s * s_count + s2] = if s == s2 { 1.0 - gamma * p } else { -gamma * p };
            }
        }
        let v = solve_linear(matrix, rhs);
        let mut q = vec![0.0f64; s_count * a_count];
        for pair in 0..s_count * a_count {
            let mut value = gains[pair];
            for (s2, vs) in v.iter().enumerate() {
                value += gamma * kernel[pair * s_count + s2] * vs;
            }
            q[pair] = value;
        }
        let improved = greedy_from(&q);
        if improved == policy {
            return Ok(QTable {
                s_count,
                a_count,
                gamma,
                values: q,
            });
        }
        policy = improved;
        if iteration == 10_000 {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: 10_000,
        residual: f64::NAN,
        tol: 0.0,
    })
}

/// Greedy deterministic policy from a solved Q-table, lowest index on ties.
pub fn policy_from_q(q: &QTable) -> Policy {
    Policy {
        actions: (0..q.s_count()).map(|s| q.greedy_action(s)).collect(),
    }
}

/// Depth-τ evaluation of the exact curiosity recursion: unlike [`solve_dp`],
/// the posterior is updated along every hypothetical branch. Cost O((S·A)^τ).
pub fn exact_q_depth(
    table: &PosteriorTable,
    s: usize,
    a: usize,
    gamma: f64,
    tau: u32,
) -> Result<f64> {
    exact_q_depth_with_budget(table, s, a, gamma, tau, EXACT_DEPTH_NODE_BUDGET)
}

pub fn exact_q_depth_with_budget(
    table: &PosteriorTable,
    s: usize,
    a: usize,
    gamma: f64,
    tau: u32,
    budget: f64,
) -> Result<f64> {
    check_gamma(gamma)?;
    if tau == 0 {
        return Err(Error::Domain("depth tau must be at least 1".into()));
    }
    table.row(s, a)?; // index validation
    let nodes = ((table.s_count() * table.a_count()) as f64).powi(tau as i32);
    if nodes > budget {
        return Err(Error::ResourceBudget {
            required: nodes,
            budget,
        });
    }
    let mut scratch = table.clone();
    Ok(exact_q_rec(&mut scratch, s, a, tau, gamma))
}

fn exact_q_rec(table: &mut PosteriorTable, s: usize, a: usize, tau: u32, gamma: f64) -> f64 {
    let gain = expected_info_gain_raw(table.row(s, a).expect("validated"));
    if tau <= 1 {
        return gain;
    }
    let total = table.row_total(s, a).expect("validated");
    let mut continuation = 0.0;
    for s2 in 0..table.s_count() {
        let old = table.entry(s, a, s2);
        // Branch on hypothetically observing s2; restore the exact old count
        // afterwards (old + 1 − 1 need not round back to old).
        table.set_entry(s, a, s2, old + 1.0);
        let mut best = f64::NEG_INFINITY;
        for a2 in 0..table.a_count() {
            best = best.max(exact_q_rec(table, s2, a2, tau - 1, gamma));
        }
        table.set_entry(s, a, s2, old);
        continuation += old / total * best;
    }
    gain + gamma * continuation
}

/// Uniform truncation bound g_α·γ^τ/(1−γ) on how far a depth-τ value can sit
/// below the infinite-horizon one. Requires γ ∈ [0, 1).
pub fn tail_bound(stats: &TableStats, gamma: f64, tau: u32) -> f64 {
    debug_assert!((0.0..1.0).contains(&gamma));
    stats.g_alpha * gamma.powi(tau as i32) / (1.0 - gamma)
}

/// Exploration by repeatedly solving the frozen-posterior Bellman equation and
/// acting greedily: per step, solve, act, sample the true transition, update
/// the posterior, and refresh the visited pair's cached gain and kernel row.
///
/// Fixed seed ⇒ bit-identical log. Successive solves warm-start from the
/// previous step's fixed point.
pub fn explore_dp(
    env: &EnvSpec,
    table: &PosteriorTable,
    gamma: f64,
    steps: usize,
    seed: u64,
) -> Result<ExploreResult> {
    explore_dp_with(env, table, gamma, steps, seed, &SolveOptions::default())
}

pub fn explore_dp_with(
    env: &EnvSpec,
    table: &PosteriorTable,
    gamma: f64,
    steps: usize,
    seed: u64,
    options: &SolveOptions,
) -> Result<ExploreResult> {
    check_gamma(gamma)?;
    check_env_table(env, table)?;
    let (s_count, a_count) = (table.s_count(), table.a_count());
    let (mut gains, mut kernel) = gains_and_kernel(table);
    let mut recorder = StepRecorder::new(table);
    let mut rng = RngStream::new(seed);
    let mut state = env.initial_state();
    let mut warm: Option<QTable> = None;
    for t in 1..=steps {
        let solved = solve_bellman(
            &gains,
            &kernel,
            s_count,
            a_count,
            gamma,
            options,
            warm.as_ref(),
        )?;
        let action = solved.greedy_action(state);
        let next = step(env, state, action, &mut rng)?;
        recorder.record(t, state, action, next)?;
        let pair = state * a_count + action;
        let row = recorder.table().row(state, action)?;
        let total: f64 = row.iter().sum();
        gains[pair] = expected_info_gain_raw(row);
        for (s2, &count) in row.iter().enumerate() {
            kernel[pair * s_count + s2] = count / total;
        }
        warm = Some(solved);
        state = next;
    }
    Ok(recorder.finish())
}

pub(crate) fn check_env_table(env: &EnvSpec, table: &PosteriorTable) -> Result<()> {
    if env.s_count() != table.s_count() || env.a_count() != table.a_count() {
        return Err(Error::ShapeMismatch(format!(
            "environment is {}×{}, posterior table is {}×{}",
            env.s_count(),
            env.a_count(),
            table.s_count(),
            table.a_count()
        )));
    }
    Ok(())
}
