//! The one-distribution learning demonstration: i.i.d. categorical samples
//! against a Dirichlet prior, tracking both the running sum of one-step gains
//! and the cumulative gain with respect to the prior. The sum is monotone; the
//! cumulative gain need not be.

use serde::Serialize;

use curiosity_core::env::RngStream;
use curiosity_core::info_geometry::{kl_dirichlet, DirichletCounts};

use crate::error::{CliError, Result};
use crate::metadata::{config_hash, metadata_line};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig1Row {
    pub t: usize,
    pub cumulative_gain: f64,
    pub sum_one_step_gains: f64,
}

fn validate(p: &[f64], prior: &[f64]) -> Result<()> {
    if p.is_empty() || p.len() != prior.len() {
        return Err(CliError::Config(format!(
            "probability vector ({}) and prior ({}) must have equal positive length",
            p.len(),
            prior.len()
        )));
    }
    if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(CliError::Config("probabilities must lie in [0, 1]".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(CliError::Config(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }
    Ok(())
}

/// Draws `samples` i.i.d. observations from `p`, updating a Dirichlet belief
/// started at `prior`, and records per step the cumulative gain (KL of the
/// posterior against the prior) and the running sum of one-step gains.
/// Row 0 is the all-zero starting point.
pub fn fig1_demo(
    samples: usize,
    p: &[f64],
    prior: &DirichletCounts,
    seed: u64,
) -> Result<Vec<Fig1Row>> {
    validate(p, prior.counts())?;
    let mut rng = RngStream::new(seed);
    let mut posterior = prior.clone();
    let mut rows = Vec::with_capacity(samples + 1);
    rows.push(Fig1Row {
        t: 0,
        cumulative_gain: 0.0,
        sum_one_step_gains: 0.0,
    });
    let mut sum = 0.0;
    for t in 1..=samples {
        let u = rng.next_f64();
        let mut outcome = p.len() - 1;
        let mut cum = 0.0;
        for (i, &prob) in p.iter().enumerate() {
            cum += prob;
            if u < cum {
                outcome = i;
                break;
            }
        }
        let updated = posterior.incremented(outcome)?;
        sum += kl_dirichlet(&updated, &posterior)?;
        posterior = updated;
        rows.push(Fig1Row {
            t,
            cumulative_gain: kl_dirichlet(&posterior, prior)?,
            sum_one_step_gains: sum,
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct Fig1Meta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config_hash: String,
    samples: usize,
    p: &'a [f64],
    prior: &'a [f64],
    seed: u64,
}

/// Renders the demonstration as a CSV with a metadata header.
pub fn fig1_csv(samples: usize, p: &[f64], prior: &DirichletCounts, seed: u64) -> Result<String> {
    let rows = fig1_demo(samples, p, prior, seed)?;
    let meta = Fig1Meta {
        tool: "curiosity",
        version: curiosity_core::VERSION,
        command: "fig1",
        config_hash: config_hash(&(samples, p, prior.counts(), seed)),
        samples,
        p,
        prior: prior.counts(),
        seed,
    };
    let mut out = metadata_line(&meta);
    out.push_str("t,cumulative_gain,sum_one_step_gains\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.t, row.cumulative_gain, row.sum_one_step_gains
        ));
    }
    Ok(out)
}
