//! Error-scaling study: how far the frozen-posterior Bellman solution sits
//! from the depth-truncated posterior-propagating recursion as the prior
//! strength grows. The headline prediction is error ∝ 1/c², with c the prior
//! scale.

use serde::Serialize;

use curiosity_core::env::RngStream;
use curiosity_core::planner::{exact_q_depth, solve_dp, tail_bound};
use curiosity_core::posterior::PosteriorTable;

use crate::error::{CliError, Result};
use crate::metadata::{config_hash, metadata_line};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareRow {
    pub scale: f64,
    /// max over (s,a) of |depth-τ exact value − Bellman solution|.
    pub error: f64,
    /// Truncation allowance g_α·γ^τ/(1−γ) at this scale.
    pub tail: f64,
    /// scale²·error, the quantity expected to stay bounded.
    pub c2_error: f64,
}

/// A reproducible random base table with entries in [0.5, 2).
pub fn random_base_table(s_count: usize, a_count: usize, seed: u64) -> Result<PosteriorTable> {
    let mut rng = RngStream::new(seed);
    let counts: Vec<f64> = (0..s_count * a_count * s_count)
        .map(|_| 0.5 + 1.5 * rng.next_f64())
        .collect();
    Ok(PosteriorTable::from_counts(s_count, a_count, counts)?)
}

/// For each prior scale c, multiplies the base table by c and reports the
/// worst-pair disagreement between [`exact_q_depth`] at depth `tau` and
/// [`solve_dp`], together with the truncation tail and c²·error.
pub fn compare_exact_vs_dp(
    s_count: usize,
    a_count: usize,
    gamma: f64,
    tau: u32,
    scales: &[f64],
    seed: u64,
    tol: f64,
) -> Result<Vec<CompareRow>> {
    if scales.is_empty() {
        return Err(CliError::Config("at least one scale is required".into()));
    }
    if scales.iter().any(|&c| !c.is_finite() || c <= 0.0) {
        return Err(CliError::Config("scales must be positive".into()));
    }
    let base = random_base_table(s_count, a_count, seed)?;
    let mut rows = Vec::with_capacity(scales.len());
    for &scale in scales {
        let table = base.scaled(scale)?;
        let solved = solve_dp(&table, gamma, tol)?;
        let mut error = 0.0f64;
        for s in 0..s_count {
            for a in 0..a_count {
                let exact = exact_q_depth(&table, s, a, gamma, tau)?;
                error = error.max((exact - solved.value(s, a)).abs());
            }
        }
        rows.push(CompareRow {
            scale,
            error,
            tail: tail_bound(&table.stats(), gamma, tau),
            c2_error: scale * scale * error,
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct CompareMeta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config_hash: String,
    states: usize,
    actions: usize,
    gamma: f64,
    tau: u32,
    scales: &'a [f64],
    seed: u64,
    tol: f64,
}

/// CSV rendering with a metadata header; columns scale,error,tail,c2_error.
#[allow(clippy::too_many_arguments)]
pub fn compare_csv(
    s_count: usize,
    a_count: usize,
    gamma: f64,
    tau: u32,
    scales: &[f64],
    seed: u64,
    tol: f64,
) -> Result<String> {
    let rows = compare_exact_vs_dp(s_count, a_count, gamma, tau, scales, seed, tol)?;
    let meta = CompareMeta {
        tool: "curiosity",
        version: curiosity_core::VERSION,
        command: "compare",
        config_hash: config_hash(&(s_count, a_count, gamma.to_bits(), tau, scales, seed)),
        states: s_count,
        actions: a_count,
        gamma,
        tau,
        scales,
        seed,
        tol,
    };
    let mut out = metadata_line(&meta);
    out.push_str("scale,error,tail,c2_error\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.scale, row.error, row.tail, row.c2_error
        ));
    }
    Ok(out)
}
