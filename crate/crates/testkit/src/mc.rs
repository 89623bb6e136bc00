//! Monte-Carlo estimators for mutual information and Dirichlet KL divergence.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Gamma};

use crate::series::ln_gamma_stirling_oracle;

fn sample_dirichlet(counts: &[f64], rng: &mut StdRng) -> Vec<f64> {
    let mut draws: Vec<f64> = counts
        .iter()
        .map(|&c| {
            let gamma = Gamma::new(c, 1.0).expect("positive shape");
            gamma.sample(rng)
        })
        .collect();
    let total: f64 = draws.iter().sum();
    for d in &mut draws {
        *d /= total;
    }
    draws
}

fn sample_categorical(probs: &[f64], rng: &mut StdRng) -> usize {
    let u: f64 = rng.random();
    let mut cum = 0.0;
    for (i, p) in probs.iter().enumerate() {
        cum += p;
        if u < cum {
            return i;
        }
    }
    probs.len() - 1
}

/// Monte-Carlo estimate of I(Θ; X) where Θ ~ Dir(counts) and X | Θ ~ Cat(Θ).
///
/// Uses I = E_{θ,x}[ln p(x|θ) − ln p̄(x)] with p̄ the predictive mean.
/// Returns (estimate, standard error).
pub fn mc_mutual_information(counts: &[f64], samples: usize, seed: u64) -> (f64, f64) {
    let total: f64 = counts.iter().sum();
    let predictive: Vec<f64> = counts.iter().map(|c| c / total).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for k in 0..samples {
        let theta = sample_dirichlet(counts, &mut rng);
        let x = sample_categorical(&theta, &mut rng);
        let value = theta[x].ln() - predictive[x].ln();
        let delta = value - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (value - mean);
    }
    let variance = m2 / (samples - 1) as f64;
    (mean, (variance / samples as f64).sqrt())
}

/// Monte-Carlo estimate of KL(Dir(post) ‖ Dir(prior)) via the average
/// log-density ratio under Dir(post). Returns (estimate, standard error).
pub fn mc_kl_dirichlet(post: &[f64], prior: &[f64], samples: usize, seed: u64) -> (f64, f64) {
    assert_eq!(post.len(), prior.len());
    let ln_beta = |v: &[f64]| -> f64 {
        let total: f64 = v.iter().sum();
        v.iter().map(|&c| ln_gamma_stirling_oracle(c)).sum::<f64>()
            - ln_gamma_stirling_oracle(total)
    };
    let constant = ln_beta(prior) - ln_beta(post);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for k in 0..samples {
        let theta = sample_dirichlet(post, &mut rng);
        let mut value = constant;
        for i in 0..post.len() {
            value += (post[i] - prior[i]) * theta[i].ln();
        }
        let delta = value - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (value - mean);
    }
    let variance = m2 / (samples - 1) as f64;
    (mean, (variance / samples as f64).sqrt())
}
