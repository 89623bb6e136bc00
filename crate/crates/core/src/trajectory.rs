//! Trajectory records shared by every explorer, plus the single observe-and-log
//! path that keeps posterior updates identical across algorithms.

use crate::error::Result;
use crate::info_geometry::kl_dirichlet_raw;
use crate::posterior::PosteriorTable;

/// One logged exploration step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// 1-based step index.
    pub t: usize,
    pub state: usize,
    pub action: usize,
    pub next_state: usize,
    /// KL of the updated row against the pre-update row, in nats.
    pub realized_gain: f64,
    /// KL of the whole posterior against the run's prior, after this step.
    pub cumulative_gain: f64,
}

/// A time-indexed exploration record.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrajectoryLog {
    pub steps: Vec<StepRecord>,
}

impl TrajectoryLog {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_cumulative_gain(&self) -> f64 {
        self.steps.last().map_or(0.0, |r| r.cumulative_gain)
    }
}

/// An explorer's output: the log and the posterior it ended with.
#[derive(Debug, Clone, PartialEq)]
pub struct ExploreResult {
    pub log: TrajectoryLog,
    pub posterior: PosteriorTable,
}

/// Owns the live posterior during a run and maintains the cumulative gain
/// incrementally (only the visited row's KL-to-prior term changes per step).
pub(crate) struct StepRecorder {
    table: PosteriorTable,
    prior: PosteriorTable,
    /// KL(row ‖ prior row) per (s,a) pair, kept in sync with `table`.
    row_kl: Vec<f64>,
    cumulative: f64,
    log: TrajectoryLog,
}

impl StepRecorder {
    pub fn new(prior: &PosteriorTable) -> Self {
        let pairs = prior.s_count() * prior.a_count();
        Self {
            table: prior.clone(),
            prior: prior.clone(),
            row_kl: vec![0.0; pairs],
            cumulative: 0.0,
            log: TrajectoryLog::default(),
        }
    }

    pub fn table(&self) -> &PosteriorTable {
        &self.table
    }

    /// Applies one observed transition: computes the realized gain against the
    /// pre-update posterior, increments the count, refreshes the cumulative
    /// gain, and logs the step.
    pub fn record(&mut self, t: usize, s: usize, a: usize, s2: usize) -> Result<f64> {
        let realized = self.table.realized_gain(s, a, s2)?;
        self.table.observe_in_place(s, a, s2)?;
        let pair = s * self.table.a_count() + a;
        let new_kl = kl_dirichlet_raw(self.table.row(s, a)?, self.prior.row(s, a)?);
        self.cumulative += new_kl - self.row_kl[pair];
        self.row_kl[pair] = new_kl;
        self.log.steps.push(StepRecord {
            t,
            state: s,
            action: a,
            next_state: s2,
            realized_gain: realized,
            cumulative_gain: self.cumulative,
        });
        Ok(realized)
    }

    pub fn finish(self) -> ExploreResult {
        ExploreResult {
            log: self.log,
            posterior: self.table,
        }
    }
}
