//! Per-(state, action) Dirichlet posteriors over next states: the agent's
//! entire knowledge of a finite MDP, stored as an S×A×S array of pseudo-counts
//! updated by the single-entry increment operator.

use crate::error::{Error, Result};
use crate::info_geometry::{expected_info_gain_raw, kl_dirichlet_raw, DirichletCounts};

/// S×A×S array of positive pseudo-counts.
///
/// Snapshots have value semantics: [`PosteriorTable::observe`] returns a new
/// table, so planners can branch on hypothetical observations without
/// disturbing the live posterior.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorTable {
    s_count: usize,
    a_count: usize,
    counts: Vec<f64>,
}

/// Summary statistics controlling the planner bounds: the smallest per-pair
/// total pseudo-count and the largest per-pair expected gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableStats {
    pub c_alpha: f64,
    pub g_alpha: f64,
}

impl PosteriorTable {
    /// A table with every entry set to `prior_count`.
    pub fn new_uniform(s_count: usize, a_count: usize, prior_count: f64) -> Result<Self> {
        if s_count == 0 || a_count == 0 {
            return Err(Error::Domain(
                "state and action counts must be positive".into(),
            ));
        }
        if !prior_count.is_finite() || prior_count <= 0.0 {
            return Err(Error::Domain(format!(
                "prior count must be a finite positive real, got {prior_count}"
            )));
        }
        Ok(Self {
            s_count,
            a_count,
            counts: vec![prior_count; s_count * a_count * s_count],
        })
    }

    /// A table from an explicit flat count array, laid out row by row with
    /// states outermost: index `(s·A + a)·S + s'`.
    pub fn from_counts(s_count: usize, a_count: usize, counts: Vec<f64>) -> Result<Self> {
        if s_count == 0 || a_count == 0 {
            return Err(Error::Domain(
                "state and action counts must be positive".into(),
            ));
        }
        if counts.len() != s_count * a_count * s_count {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries, got {}",
                s_count * a_count * s_count,
                counts.len()
            )));
        }
        if counts.iter().any(|&c| !c.is_finite() || c <= 0.0) {
            return Err(Error::Domain("all pseudo-counts must be positive".into()));
        }
        Ok(Self {
            s_count,
            a_count,
            counts,
        })
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    fn check(&self, name: &'static str, index: usize, bound: usize) -> Result<()> {
        if index >= bound {
            return Err(Error::IndexOutOfRange { name, index, bound });
        }
        Ok(())
    }

    fn check_pair(&self, s: usize, a: usize) -> Result<()> {
        self.check("state", s, self.s_count)?;
        self.check("action", a, self.a_count)
    }

    fn pair_offset(&self, s: usize, a: usize) -> usize {
        (s * self.a_count + a) * self.s_count
    }

    /// The count row α_{s,a,·}.
    pub fn row(&self, s: usize, a: usize) -> Result<&[f64]> {
        self.check_pair(s, a)?;
        let off = self.pair_offset(s, a);
        Ok(&self.counts[off..off + self.s_count])
    }

    /// The row as validated [`DirichletCounts`].
    pub fn row_counts(&self, s: usize, a: usize) -> Result<DirichletCounts> {
        DirichletCounts::new(self.row(s, a)?.to_vec())
    }

    /// α_{s,a} = Σ_{s'} α_{s,a,s'}.
    pub fn row_total(&self, s: usize, a: usize) -> Result<f64> {
        Ok(self.row(s, a)?.iter().sum())
    }

    /// Sum of every entry in the table.
    pub fn grand_total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// The ◁ operator: a new table with the ⟨s,a,s2⟩ entry increased by one.
    pub fn observe(&self, s: usize, a: usize, s2: usize) -> Result<Self> {
        let mut next = self.clone();
        next.observe_in_place(s, a, s2)?;
        Ok(next)
    }

    /// In-place variant of [`PosteriorTable::observe`] for trajectory loops
    /// that own their table.
    pub fn observe_in_place(&mut self, s: usize, a: usize, s2: usize) -> Result<()> {
        self.check_pair(s, a)?;
        self.check("next state", s2, self.s_count)?;
        let off = self.pair_offset(s, a) + s2;
        self.counts[off] += 1.0;
        Ok(())
    }

    pub(crate) fn entry(&self, s: usize, a: usize, s2: usize) -> f64 {
        self.counts[self.pair_offset(s, a) + s2]
    }

    pub(crate) fn set_entry(&mut self, s: usize, a: usize, s2: usize, value: f64) {
        let off = self.pair_offset(s, a) + s2;
        self.counts[off] = value;
    }

    /// Predictive next-state probabilities p_α(s'|s,a) = α_{s,a,s'}/α_{s,a}.
    pub fn predictive(&self, s: usize, a: usize) -> Result<Vec<f64>> {
        let row = self.row(s, a)?;
        let total: f64 = row.iter().sum();
        Ok(row.iter().map(|&c| c / total).collect())
    }

    /// Expected information gain g(α_{s,a}) of one more transition from the
    /// pair.
    pub fn pair_gain(&self, s: usize, a: usize) -> Result<f64> {
        Ok(expected_info_gain_raw(self.row(s, a)?))
    }

    /// Information actually gained by observing ⟨s,a⟩ → s2:
    /// KL(Dir(α ◁ ⟨s,a,s2⟩)_{s,a} ‖ Dir(α)_{s,a}).
    pub fn realized_gain(&self, s: usize, a: usize, s2: usize) -> Result<f64> {
        self.check("next state", s2, self.s_count)?;
        let row = self.row(s, a)?;
        let mut bumped = row.to_vec();
        bumped[s2] += 1.0;
        Ok(kl_dirichlet_raw(&bumped, row))
    }

    /// Cumulative information gain with respect to `prior`: the joint
    /// posterior factorizes over pairs, so the KL is the sum of per-row KLs.
    pub fn cumulative_gain(&self, prior: &PosteriorTable) -> Result<f64> {
        if self.s_count != prior.s_count || self.a_count != prior.a_count {
            return Err(Error::ShapeMismatch(
                "tables must share state and action counts".into(),
            ));
        }
        let mut total = 0.0;
        for s in 0..self.s_count {
            for a in 0..self.a_count {
                total += kl_dirichlet_raw(self.row(s, a)?, prior.row(s, a)?);
            }
        }
        Ok(total)
    }

    /// c_α = min over pairs of α_{s,a}; g_α = max over pairs of g(α_{s,a}).
    pub fn stats(&self) -> TableStats {
        let mut c_alpha = f64::INFINITY;
        let mut g_alpha = 0.0f64;
        for s in 0..self.s_count {
            for a in 0..self.a_count {
                let row = self.row(s, a).expect("in range");
                c_alpha = c_alpha.min(row.iter().sum());
                g_alpha = g_alpha.max(expected_info_gain_raw(row));
            }
        }
        TableStats { c_alpha, g_alpha }
    }

    /// A copy with every entry multiplied by `factor` (prior-strength sweeps).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(Error::Domain(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        Ok(Self {
            s_count: self.s_count,
            a_count: self.a_count,
            counts: self.counts.iter().map(|c| c * factor).collect(),
        })
    }

    /// Serializes to the checkpoint text format: a `S A` header line, then one
    /// space-separated line of S entries per (state, action) pair, states
    /// outermost.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.s_count, self.a_count);
        for s in 0..self.s_count {
            for a in 0..self.a_count {
                let row = self.row(s, a).expect("in range");
                let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Parses the [`PosteriorTable::to_text`] format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad header token {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse("header must be \"S A\"".into()));
        }
        let (s_count, a_count) = (dims[0], dims[1]);
        let mut counts = Vec::with_capacity(s_count * a_count * s_count);
        for _ in 0..s_count * a_count {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing count row".into()))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad count {tok:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != s_count {
                return Err(Error::Parse(format!(
                    "count row has {} entries, expected {s_count}",
                    row.len()
                )));
            }
            counts.extend(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after count rows".into()));
        }
        Self::from_counts(s_count, a_count, counts)
    }
}
