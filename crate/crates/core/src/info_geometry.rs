//! Dirichlet information geometry: the expected information gain of one more
//! observation, KL divergence between Dirichlet densities, and the certified
//! bounds that control how fast gains decay with accumulated counts.

use crate::error::{Error, Result};
use crate::special::{digamma_raw, f_alzer_raw, log_gamma_raw};

/// Parameter vector of a Dirichlet density over a finite outcome set.
///
/// Entries are pseudo-counts: strictly positive, finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCounts {
    counts: Vec<f64>,
}

impl DirichletCounts {
    pub fn new(counts: Vec<f64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Domain("counts must be non-empty".into()));
        }
        for (i, &c) in counts.iter().enumerate() {
            if !c.is_finite() || c <= 0.0 {
                return Err(Error::Domain(format!(
                    "count {i} must be a finite positive real, got {c}"
                )));
            }
        }
        let total: f64 = counts.iter().sum();
        if !total.is_finite() {
            return Err(Error::Domain("count total overflows".into()));
        }
        Ok(Self { counts })
    }

    /// A vector of `len` identical pseudo-counts.
    pub fn symmetric(len: usize, count: f64) -> Result<Self> {
        Self::new(vec![count; len])
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one outcome
    }

    /// n* = Σ_s n_s.
    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// The counts after one observation of outcome `s` (the ◁ operator on a
    /// single row).
    pub fn incremented(&self, s: usize) -> Result<Self> {
        if s >= self.counts.len() {
            return Err(Error::IndexOutOfRange {
                name: "outcome",
                index: s,
                bound: self.counts.len(),
            });
        }
        let mut counts = self.counts.clone();
        counts[s] += 1.0;
        Ok(Self { counts })
    }
}

/// Expected information gain (in nats) of one more observation drawn through
/// a Dirichlet belief with the given counts:
/// g(n) = log n* − ψ(n*+1) − Σ_s (n_s/n*)[log n_s − ψ(n_s+1)].
///
/// Evaluated as (Σ_s f(n_s) − f(n*))/n*, which is the same quantity with the
/// large-count cancellation removed.
pub fn expected_info_gain(n: &DirichletCounts) -> f64 {
    expected_info_gain_raw(n.counts())
}

/// As [`expected_info_gain`], for a raw row already known to hold positive
/// counts.
pub(crate) fn expected_info_gain_raw(counts: &[f64]) -> f64 {
    if counts.len() == 1 {
        return 0.0;
    }
    let total: f64 = counts.iter().sum();
    let sum_f: f64 = counts.iter().map(|&c| f_alzer_raw(c)).sum();
    (sum_f - f_alzer_raw(total)) / total
}

/// KL(Dir(post) ‖ Dir(prior)) in nats, by the exponential-family closed form.
pub fn kl_dirichlet(post: &DirichletCounts, prior: &DirichletCounts) -> Result<f64> {
    if post.len() != prior.len() {
        return Err(Error::ShapeMismatch(format!(
            "posterior has {} outcomes, prior has {}",
            post.len(),
            prior.len()
        )));
    }
    Ok(kl_dirichlet_raw(post.counts(), prior.counts()))
}

/// As [`kl_dirichlet`], for equal-length raw rows of positive counts.
pub(crate) fn kl_dirichlet_raw(post: &[f64], prior: &[f64]) -> f64 {
    let a0: f64 = post.iter().sum();
    let b0: f64 = prior.iter().sum();
    let mut kl = log_gamma_raw(a0) - log_gamma_raw(b0);
    let psi_a0 = digamma_raw(a0);
    for (&a, &b) in post.iter().zip(prior) {
        kl += log_gamma_raw(b) - log_gamma_raw(a);
        kl += (a - b) * (digamma_raw(a) - psi_a0);
    }
    kl
}

/// Certified bracket for the expected gain after `t` further observations on
/// `prior`, valid for any observation sequence:
/// (Σ_{s≠s*} f(n_s⁰) − f(Σ_{s≠s*} n_s⁰)) / (2(n⁰+t))  <  g(n^t)  <  (S−1)/(2(n⁰+t)),
/// with s* the largest prior entry.
pub fn gain_bounds(prior: &DirichletCounts, t: u64) -> Result<(f64, f64)> {
    let s_count = prior.len();
    if s_count < 2 {
        return Err(Error::Domain(
            "gain bounds are vacuous for a single outcome".into(),
        ));
    }
    let posterior_total = prior.total() + t as f64;
    let s_star = prior
        .counts()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.partial_cmp(y.1).expect("finite counts"))
        .map(|(i, _)| i)
        .expect("non-empty");
    let rest_sum: f64 = prior
        .counts()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != s_star)
        .map(|(_, &c)| c)
        .sum();
    let rest_f: f64 = prior
        .counts()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != s_star)
        .map(|(_, &c)| f_alzer_raw(c))
        .sum();
    let lower = (rest_f - f_alzer_raw(rest_sum)) / (2.0 * posterior_total);
    let upper = (s_count as f64 - 1.0) / (2.0 * posterior_total);
    Ok((lower, upper))
}

/// Certified bound S/(2 n*²) on the weighted one-observation variation
/// (n_s/n*)·|g(n ◁ s) − g(n)|.
pub fn gain_variation_bound(n: &DirichletCounts, s: usize) -> Result<f64> {
    if s >= n.len() {
        return Err(Error::IndexOutOfRange {
            name: "outcome",
            index: s,
            bound: n.len(),
        });
    }
    let total = n.total();
    Ok(n.len() as f64 / (2.0 * total * total))
}
