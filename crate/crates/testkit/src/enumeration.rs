//! Brute-force policy enumeration over finite-hypothesis models.
//!
//! These evaluators walk the full action/observation tree and therefore cost
//! O((n_a·n_o)^τ·#policies); they exist only to certify small planner fixtures.

use curiosity_core::bayes::{expected_gain, posterior_update, History, HypothesisModel, Predictor};

/// All q_π values (one per deterministic policy for the remaining horizon)
/// of performing `action` now. `gamma = 1.0` yields the undiscounted value.
pub fn enumerate_policy_q_values<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    tau: u32,
    gamma: f64,
) -> Vec<f64> {
    let gain = expected_gain(model, history, action).expect("valid fixture");
    if tau <= 1 {
        return vec![gain];
    }
    let predictive = model.predictive(history, action).expect("valid fixture");
    // Per observation, the value list of every deterministic sub-policy.
    let mut branches: Vec<(f64, Vec<f64>)> = Vec::new();
    for (obs, &p) in predictive.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let updated = posterior_update(model, history, action, obs).expect("p > 0");
        let mut next = history.clone();
        next.push(action, obs);
        let values = enumerate_policy_v_values(&updated, &next, tau - 1, gamma);
        branches.push((p, values));
    }
    // A policy picks one continuation per observation branch independently.
    let mut totals = vec![0.0f64];
    for (p, values) in &branches {
        let mut expanded = Vec::with_capacity(totals.len() * values.len());
        for t in &totals {
            for v in values {
                expanded.push(t + p * v);
            }
        }
        totals = expanded;
    }
    totals.iter().map(|t| gain + gamma * t).collect()
}

/// All v_π values at `history`: the policy also chooses the first action.
pub fn enumerate_policy_v_values<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    tau: u32,
    gamma: f64,
) -> Vec<f64> {
    let mut all = Vec::new();
    for action in 0..model.action_count() {
        all.extend(enumerate_policy_q_values(
            model, history, action, tau, gamma,
        ));
    }
    all
}

/// q_π^{τ,γ}(h, a) for one fixed deterministic policy.
pub fn fixed_policy_q<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    tau: u32,
    gamma: f64,
    policy: &dyn Fn(&History) -> usize,
) -> f64 {
    let gain = expected_gain(model, history, action).expect("valid fixture");
    if tau <= 1 {
        return gain;
    }
    let predictive = model.predictive(history, action).expect("valid fixture");
    let mut continuation = 0.0;
    for (obs, &p) in predictive.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let updated = posterior_update(model, history, action, obs).expect("p > 0");
        let mut next = history.clone();
        next.push(action, obs);
        let chosen = policy(&next);
        continuation += p * fixed_policy_q(&updated, &next, chosen, tau - 1, gamma, policy);
    }
    gain + gamma * continuation
}

/// E over length-`depth` continuations (actions from `policy`) of the terminal
/// expected gain g(a_τ ‖ h_τ), starting by performing `action` at `history`.
pub fn terminal_gain_expectation<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    depth: u32,
    policy: &dyn Fn(&History) -> usize,
) -> f64 {
    if depth == 0 {
        return expected_gain(model, history, action).expect("valid fixture");
    }
    let predictive = model.predictive(history, action).expect("valid fixture");
    let mut acc = 0.0;
    for (obs, &p) in predictive.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let updated = posterior_update(model, history, action, obs).expect("p > 0");
        let mut next = history.clone();
        next.push(action, obs);
        let chosen = policy(&next);
        acc += p * terminal_gain_expectation(&updated, &next, chosen, depth - 1, policy);
    }
    acc
}

/// The alternating E/max marginalization of the terminal expected gain,
/// E_{o} max_{a₁} E_{o₁} ⋯ max_{a_τ} g(a_τ ‖ h ⋯ o_{τ−1}).
pub fn max_marginal_terminal_gain<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    depth: u32,
) -> f64 {
    if depth == 0 {
        return expected_gain(model, history, action).expect("valid fixture");
    }
    let predictive = model.predictive(history, action).expect("valid fixture");
    let mut acc = 0.0;
    for (obs, &p) in predictive.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let updated = posterior_update(model, history, action, obs).expect("p > 0");
        let mut next = history.clone();
        next.push(action, obs);
        let best = (0..model.action_count())
            .map(|a| max_marginal_terminal_gain(&updated, &next, a, depth - 1))
            .fold(f64::NEG_INFINITY, f64::max);
        acc += p * best;
    }
    acc
}
