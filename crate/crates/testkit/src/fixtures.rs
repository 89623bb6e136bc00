//! Shared planner fixtures: small Markov hypothesis models (≤ 3 hypotheses,
//! 2 actions, 2 observations) that exhaustive oracles can certify.

use curiosity_core::bayes::{HypothesisModel, MarkovPredictor};

fn markov(rows: [[[f64; 2]; 2]; 2]) -> MarkovPredictor {
    let nested: Vec<Vec<Vec<f64>>> = rows
        .iter()
        .map(|per_obs| per_obs.iter().map(|r| r.to_vec()).collect())
        .collect();
    MarkovPredictor::new(0, nested).expect("valid fixture rows")
}

/// The fixture set used by the exhaustive-enumeration suites.
pub fn fixture_models() -> Vec<(&'static str, HypothesisModel<MarkovPredictor>)> {
    let mut models = Vec::new();

    // Action 0 separates the two hypotheses deterministically; action 1 is
    // pure noise. rows[last_obs][action] = distribution over next obs.
    let always_zero = markov([[[1.0, 0.0], [0.5, 0.5]], [[1.0, 0.0], [0.5, 0.5]]]);
    let always_one = markov([[[0.0, 1.0], [0.5, 0.5]], [[0.0, 1.0], [0.5, 0.5]]]);
    models.push((
        "deterministic_coins",
        HypothesisModel::uniform(vec![always_zero, always_one], 2, 2).unwrap(),
    ));

    // Two biased coins under action 0; action 1 carries no information.
    let biased_a = markov([[[0.8, 0.2], [0.6, 0.4]], [[0.8, 0.2], [0.6, 0.4]]]);
    let biased_b = markov([[[0.2, 0.8], [0.6, 0.4]], [[0.2, 0.8], [0.6, 0.4]]]);
    models.push((
        "biased_coins",
        HypothesisModel::uniform(vec![biased_a, biased_b], 2, 2).unwrap(),
    ));

    // Delayed information: action 1 is uninformative but moves the process to
    // observation state 1, where action 0 separates the hypotheses exactly.
    let delayed_a = markov([[[0.9, 0.1], [0.0, 1.0]], [[1.0, 0.0], [0.5, 0.5]]]);
    let delayed_b = markov([[[0.8, 0.2], [0.0, 1.0]], [[0.0, 1.0], [0.5, 0.5]]]);
    models.push((
        "delayed_information",
        HypothesisModel::uniform(vec![delayed_a, delayed_b], 2, 2).unwrap(),
    ));

    // Three hypotheses with generic stochastic rows.
    let h0 = markov([[[0.7, 0.3], [0.4, 0.6]], [[0.55, 0.45], [0.25, 0.75]]]);
    let h1 = markov([[[0.3, 0.7], [0.5, 0.5]], [[0.35, 0.65], [0.8, 0.2]]]);
    let h2 = markov([[[0.5, 0.5], [0.9, 0.1]], [[0.15, 0.85], [0.6, 0.4]]]);
    models.push((
        "three_hypotheses",
        HypothesisModel::new(vec![h0, h1, h2], vec![0.5, 0.3, 0.2], 2, 2).unwrap(),
    ));

    // A single hypothesis: nothing to learn, every gain is zero.
    let lone = markov([[[0.6, 0.4], [0.3, 0.7]], [[0.2, 0.8], [0.5, 0.5]]]);
    models.push((
        "single_hypothesis",
        HypothesisModel::uniform(vec![lone], 2, 2).unwrap(),
    ));

    models
}
