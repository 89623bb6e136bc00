//! Bayesian learning over a finite hypothesis class and the exact curiosity
//! planners built on it.
//!
//! A [`HypothesisModel`] carries a finite set of conditional predictors
//! together with posterior weights over them. Planning values are defined by
//! backward induction: the curiosity Q-value of an action is its expected
//! one-step information gain plus the (optionally discounted) expected
//! curiosity value of wherever the action leads. The planners here expand the
//! full action/observation tree and are exponential in the horizon; they are
//! guarded by an explicit node budget.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Weights this small are treated as falsified and renormalized away.
const WEIGHT_FLOOR: f64 = 1e-300;

/// Default cap on the number of tree nodes a planner call may expand.
pub const DEFAULT_NODE_BUDGET: f64 = 1e7;

/// An action/observation record, built up as `a₁o₁⋯a_t o_t`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct History {
    steps: Vec<(usize, usize)>,
}

impl History {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn push(&mut self, action: usize, observation: usize) {
        self.steps.push((action, observation));
    }

    pub fn pop(&mut self) -> Option<(usize, usize)> {
        self.steps.pop()
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last_observation(&self) -> Option<usize> {
        self.steps.last().map(|&(_, o)| o)
    }
}

/// A conditional predictor p(o | h, a; θ) for one hypothesis θ.
pub trait Predictor {
    /// Probability vector over observations after performing `action` at
    /// `history`. Must sum to 1.
    fn predict(&self, history: &History, action: usize) -> Vec<f64>;
}

/// A predictor whose next-observation distribution depends only on the last
/// observation and the action, with a designated initial observation standing
/// in for the empty history.
#[derive(Debug, Clone)]
pub struct MarkovPredictor {
    initial_obs: usize,
    /// rows[last_obs][action] = distribution over the next observation.
    rows: Vec<Vec<Vec<f64>>>,
}

impl MarkovPredictor {
    pub fn new(initial_obs: usize, rows: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let obs_count = rows.len();
        if obs_count == 0 {
            return Err(Error::Domain("predictor needs at least one state".into()));
        }
        if initial_obs >= obs_count {
            return Err(Error::IndexOutOfRange {
                name: "initial_obs",
                index: initial_obs,
                bound: obs_count,
            });
        }
        for per_obs in &rows {
            for row in per_obs {
                if row.len() != obs_count {
                    return Err(Error::ShapeMismatch(
                        "predictor row length must equal the observation count".into(),
                    ));
                }
                let total: f64 = row.iter().sum();
                if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) || (total - 1.0).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "predictor row must be a probability vector, sums to {total}"
                    )));
                }
            }
        }
        Ok(Self { initial_obs, rows })
    }
}

impl Predictor for MarkovPredictor {
    fn predict(&self, history: &History, action: usize) -> Vec<f64> {
        let state = history.last_observation().unwrap_or(self.initial_obs);
        self.rows[state][action].clone()
    }
}

/// A finite hypothesis class with posterior weights p(θ | h).
#[derive(Debug, Clone)]
pub struct HypothesisModel<P> {
    predictors: Arc<Vec<P>>,
    weights: Vec<f64>,
    action_count: usize,
    observation_count: usize,
}

impl<P: Predictor> HypothesisModel<P> {
    pub fn new(
        predictors: Vec<P>,
        weights: Vec<f64>,
        action_count: usize,
        observation_count: usize,
    ) -> Result<Self> {
        if predictors.is_empty() || predictors.len() != weights.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} predictors vs {} weights",
                predictors.len(),
                weights.len()
            )));
        }
        if action_count == 0 || observation_count == 0 {
            return Err(Error::Domain(
                "need at least one action and observation".into(),
            ));
        }
        if weights.iter().any(|&w| !(0.0..=1.0).contains(&w)) {
            return Err(Error::Domain("weights must lie in [0, 1]".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("weights sum to {total}, expected 1")));
        }
        Ok(Self {
            predictors: Arc::new(predictors),
            weights,
            action_count,
            observation_count,
        })
    }

    /// Uniform prior over the hypotheses.
    pub fn uniform(
        predictors: Vec<P>,
        action_count: usize,
        observation_count: usize,
    ) -> Result<Self> {
        let n = predictors.len();
        if n == 0 {
            return Err(Error::Domain("need at least one hypothesis".into()));
        }
        Self::new(
            predictors,
            vec![1.0 / n as f64; n],
            action_count,
            observation_count,
        )
    }

    pub fn hypothesis_count(&self) -> usize {
        self.predictors.len()
    }

    pub fn action_count(&self) -> usize {
        self.action_count
    }

    pub fn observation_count(&self) -> usize {
        self.observation_count
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn check_action(&self, action: usize) -> Result<()> {
        if action >= self.action_count {
            return Err(Error::IndexOutOfRange {
                name: "action",
                index: action,
                bound: self.action_count,
            });
        }
        Ok(())
    }

    /// Per-hypothesis likelihood rows p(·|ha; θ).
    fn likelihood_rows(&self, history: &History, action: usize) -> Vec<Vec<f64>> {
        self.predictors
            .iter()
            .map(|p| p.predict(history, action))
            .collect()
    }

    /// Mixture predictive p(o | ha) = Σ_θ w_θ p(o | ha; θ).
    pub fn predictive(&self, history: &History, action: usize) -> Result<Vec<f64>> {
        self.check_action(action)?;
        let rows = self.likelihood_rows(history, action);
        let mut mix = vec![0.0; self.observation_count];
        for (w, row) in self.weights.iter().zip(&rows) {
            for (m, p) in mix.iter_mut().zip(row) {
                *m += w * p;
            }
        }
        Ok(mix)
    }

    fn with_weights(&self, weights: Vec<f64>) -> Self {
        Self {
            predictors: Arc::clone(&self.predictors),
            weights,
            action_count: self.action_count,
            observation_count: self.observation_count,
        }
    }
}

fn updated_weights(
    weights: &[f64],
    rows: &[Vec<f64>],
    action: usize,
    observation: usize,
) -> Result<Vec<f64>> {
    let denom: f64 = weights
        .iter()
        .zip(rows)
        .map(|(w, row)| w * row[observation])
        .sum();
    if denom <= 0.0 {
        return Err(Error::ImpossibleObservation {
            action,
            observation,
        });
    }
    let mut next: Vec<f64> = weights
        .iter()
        .zip(rows)
        .map(|(w, row)| {
            let w2 = w * row[observation] / denom;
            if w2 < WEIGHT_FLOOR {
                0.0
            } else {
                w2
            }
        })
        .collect();
    let total: f64 = next.iter().sum();
    for w in &mut next {
        *w /= total;
    }
    Ok(next)
}

/// Bayes update of the hypothesis weights after performing `action` at
/// `history` and observing `observation`.
pub fn posterior_update<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    observation: usize,
) -> Result<HypothesisModel<P>> {
    model.check_action(action)?;
    if observation >= model.observation_count {
        return Err(Error::IndexOutOfRange {
            name: "observation",
            index: observation,
            bound: model.observation_count,
        });
    }
    let rows = model.likelihood_rows(history, action);
    let weights = updated_weights(&model.weights, &rows, action, observation)?;
    Ok(model.with_weights(weights))
}

/// Information gained moving from `reference` to `current`:
/// KL(current weights ‖ reference weights) in nats, with 0·ln(0/·) = 0.
pub fn info_gain<P>(current: &HypothesisModel<P>, reference: &HypothesisModel<P>) -> Result<f64> {
    if current.weights.len() != reference.weights.len() {
        return Err(Error::ShapeMismatch(
            "hypothesis sets differ in size".into(),
        ));
    }
    let mut kl = 0.0;
    for (i, (&w, &r)) in current.weights.iter().zip(&reference.weights).enumerate() {
        if w == 0.0 {
            continue;
        }
        if r == 0.0 {
            return Err(Error::SupportMismatch { hypothesis: i });
        }
        kl += w * (w / r).ln();
    }
    Ok(kl)
}

/// Expected information gain of performing `action`:
/// g(a‖h) = Σ_o p(o|ha) · KL(p(θ|hao) ‖ p(θ|h)).
pub fn expected_gain<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
) -> Result<f64> {
    model.check_action(action)?;
    let rows = model.likelihood_rows(history, action);
    let mut gain = 0.0;
    for o in 0..model.observation_count {
        let p: f64 = model
            .weights
            .iter()
            .zip(&rows)
            .map(|(w, row)| w * row[o])
            .sum();
        if p == 0.0 {
            continue;
        }
        let updated = updated_weights(&model.weights, &rows, action, o)?;
        let mut kl = 0.0;
        for (&w2, &w) in updated.iter().zip(&model.weights) {
            if w2 > 0.0 {
                kl += w2 * (w2 / w).ln();
            }
        }
        gain += p * kl;
    }
    Ok(gain)
}

fn check_tau_budget(model_actions: usize, model_obs: usize, tau: u32, budget: f64) -> Result<()> {
    if tau == 0 {
        return Err(Error::Domain("look-ahead tau must be at least 1".into()));
    }
    let nodes = ((model_actions * model_obs) as f64).powi(tau as i32);
    if nodes > budget {
        return Err(Error::ResourceBudget {
            required: nodes,
            budget,
        });
    }
    Ok(())
}

fn q_recursive<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &mut History,
    action: usize,
    tau: u32,
    gamma: f64,
) -> Result<f64> {
    let gain = expected_gain(model, history, action)?;
    if tau <= 1 {
        return Ok(gain);
    }
    let rows = model.likelihood_rows(history, action);
    let mut continuation = 0.0;
    for o in 0..model.observation_count {
        let p: f64 = model
            .weights
            .iter()
            .zip(&rows)
            .map(|(w, row)| w * row[o])
            .sum();
        if p == 0.0 {
            continue;
        }
        let updated = model.with_weights(updated_weights(&model.weights, &rows, action, o)?);
        history.push(action, o);
        let mut best = f64::NEG_INFINITY;
        for a2 in 0..model.action_count {
            best = best.max(q_recursive(&updated, history, a2, tau - 1, gamma)?);
        }
        history.pop();
        continuation += p * best;
    }
    Ok(gain + gamma * continuation)
}

/// Optimal τ-step curiosity Q-value q^τ(h, a), by greedy backward induction
/// over the full tree. Cost O((n_o·n_a)^τ).
pub fn curiosity_q_exact<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    tau: u32,
) -> Result<f64> {
    curiosity_q_exact_with_budget(model, history, action, tau, DEFAULT_NODE_BUDGET)
}

pub fn curiosity_q_exact_with_budget<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    tau: u32,
    budget: f64,
) -> Result<f64> {
    check_tau_budget(model.action_count, model.observation_count, tau, budget)?;
    let mut scratch = history.clone();
    q_recursive(model, &mut scratch, action, tau, 1.0)
}

/// Optimal τ-step curiosity value v^τ(h) = max_a q^τ(h, a).
pub fn curiosity_v_exact<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    tau: u32,
) -> Result<f64> {
    check_tau_budget(
        model.action_count,
        model.observation_count,
        tau,
        DEFAULT_NODE_BUDGET,
    )?;
    let mut scratch = history.clone();
    let mut best = f64::NEG_INFINITY;
    for a in 0..model.action_count() {
        best = best.max(q_recursive(model, &mut scratch, a, tau, 1.0)?);
    }
    Ok(best)
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "discount must lie in [0, 1), got {gamma}"
        )));
    }
    Ok(())
}

/// Optimal discounted curiosity Q-value q^{τ,γ}(h, a), where continuation is
/// cut off with probability 1−γ at each step.
pub fn curiosity_q_discounted<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    action: usize,
    tau: u32,
    gamma: f64,
) -> Result<f64> {
    check_gamma(gamma)?;
    check_tau_budget(
        model.action_count,
        model.observation_count,
        tau,
        DEFAULT_NODE_BUDGET,
    )?;
    let mut scratch = history.clone();
    q_recursive(model, &mut scratch, action, tau, gamma)
}

/// Optimal discounted curiosity value v^{τ,γ}(h).
pub fn curiosity_v_discounted<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    tau: u32,
    gamma: f64,
) -> Result<f64> {
    check_gamma(gamma)?;
    check_tau_budget(
        model.action_count,
        model.observation_count,
        tau,
        DEFAULT_NODE_BUDGET,
    )?;
    let mut scratch = history.clone();
    let mut best = f64::NEG_INFINITY;
    for a in 0..model.action_count() {
        best = best.max(q_recursive(model, &mut scratch, a, tau, gamma)?);
    }
    Ok(best)
}

/// The greedy optimal action arg max_a q^{τ[,γ]}(h, a); exact ties resolve to
/// the lowest action index.
pub fn optimal_action<P: Predictor>(
    model: &HypothesisModel<P>,
    history: &History,
    tau: u32,
    gamma: Option<f64>,
) -> Result<usize> {
    let gamma = match gamma {
        Some(g) => {
            check_gamma(g)?;
            g
        }
        None => 1.0,
    };
    check_tau_budget(
        model.action_count,
        model.observation_count,
        tau,
        DEFAULT_NODE_BUDGET,
    )?;
    let mut scratch = history.clone();
    let mut best_action = 0;
    let mut best_value = f64::NEG_INFINITY;
    for a in 0..model.action_count() {
        let q = q_recursive(model, &mut scratch, a, tau, gamma)?;
        if q > best_value {
            best_value = q;
            best_action = a;
        }
    }
    Ok(best_action)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin(bias: f64) -> MarkovPredictor {
        MarkovPredictor::new(
            0,
            vec![
                vec![vec![bias, 1.0 - bias], vec![0.5, 0.5]],
                vec![vec![bias, 1.0 - bias], vec![0.5, 0.5]],
            ],
        )
        .unwrap()
    }

    fn two_coins(b1: f64, b2: f64) -> HypothesisModel<MarkovPredictor> {
        HypothesisModel::uniform(vec![coin(b1), coin(b2)], 2, 2).unwrap()
    }

    #[test]
    fn identical_predictions_leave_weights_unchanged() {
        let model = two_coins(0.7, 0.7);
        let updated = posterior_update(&model, &History::empty(), 0, 0).unwrap();
        for (w2, w) in updated.weights().iter().zip(model.weights()) {
            assert!((w2 - w).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_likelihood_hypothesis_is_falsified() {
        let model = two_coins(1.0, 0.0); // hypothesis 2 never emits o = 0
        let updated = posterior_update(&model, &History::empty(), 0, 0).unwrap();
        assert_eq!(updated.weights()[1], 0.0);
        assert!((updated.weights()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bayes_arithmetic() {
        let model = two_coins(0.8, 0.2);
        let updated = posterior_update(&model, &History::empty(), 0, 0).unwrap();
        assert!((updated.weights()[0] - 0.8).abs() < 1e-15);
        assert!((updated.weights()[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn impossible_observation_is_an_error() {
        let model = two_coins(1.0, 1.0);
        let err = posterior_update(&model, &History::empty(), 0, 1).unwrap_err();
        assert!(matches!(err, Error::ImpossibleObservation { .. }));
    }

    #[test]
    fn tiny_weights_are_clamped_to_zero() {
        let predictors = vec![coin(1e-60), coin(0.5)];
        let model = HypothesisModel::new(predictors, vec![1e-250, 1.0 - 1e-250], 2, 2).unwrap();
        let updated = posterior_update(&model, &History::empty(), 0, 0).unwrap();
        assert_eq!(updated.weights()[0], 0.0);
        assert_eq!(updated.weights()[1], 1.0);
    }

    #[test]
    fn info_gain_examples() {
        let model = two_coins(0.8, 0.2);
        assert_eq!(info_gain(&model, &model).unwrap(), 0.0);

        let point = model.with_weights(vec![1.0, 0.0]);
        let ln2 = std::f64::consts::LN_2;
        assert!((info_gain(&point, &model).unwrap() - ln2).abs() < 1e-14);

        let tilted = model.with_weights(vec![0.8, 0.2]);
        let expected = 0.8 * 1.6f64.ln() + 0.2 * 0.4f64.ln();
        assert!((info_gain(&tilted, &model).unwrap() - expected).abs() < 1e-14);
        assert!((expected - 0.19274).abs() < 1e-5);

        let wide = model.with_weights(vec![0.5, 0.5]);
        let narrow = model.with_weights(vec![1.0, 0.0]);
        assert!(matches!(
            info_gain(&wide, &narrow),
            Err(Error::SupportMismatch { hypothesis: 1 })
        ));
    }

    #[test]
    fn expected_gain_examples() {
        // Identical predictors: observation carries no information.
        let same = two_coins(0.7, 0.7);
        assert!(expected_gain(&same, &History::empty(), 0).unwrap().abs() < 1e-15);

        // Disjoint deterministic predictions: one observation reveals θ.
        let disjoint = two_coins(1.0, 0.0);
        let g = expected_gain(&disjoint, &History::empty(), 0).unwrap();
        assert!((g - std::f64::consts::LN_2).abs() < 1e-14);

        // A single hypothesis has nothing to learn.
        let lone = HypothesisModel::uniform(vec![coin(0.3)], 2, 2).unwrap();
        assert_eq!(expected_gain(&lone, &History::empty(), 0).unwrap(), 0.0);
    }

    #[test]
    fn one_step_q_is_the_expected_gain() {
        let model = two_coins(0.8, 0.2);
        let h = History::empty();
        for a in 0..model.action_count() {
            let q = curiosity_q_exact(&model, &h, a, 1).unwrap();
            let g = expected_gain(&model, &h, a).unwrap();
            assert!((q - g).abs() < 1e-15);
        }
    }

    #[test]
    fn two_step_q_matches_hand_rollout() {
        let model = two_coins(0.8, 0.2);
        let h = History::empty();
        let a = 0;
        let q = curiosity_q_exact(&model, &h, a, 2).unwrap();
        let predictive = model.predictive(&h, a).unwrap();
        let mut manual = expected_gain(&model, &h, a).unwrap();
        for (o, &p) in predictive.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let updated = posterior_update(&model, &h, a, o).unwrap();
            let mut hao = h.clone();
            hao.push(a, o);
            let best = (0..2)
                .map(|a2| expected_gain(&updated, &hao, a2).unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            manual += p * best;
        }
        assert!((q - manual).abs() < 1e-13);
    }

    #[test]
    fn single_hypothesis_has_zero_value_at_any_horizon() {
        let lone = HypothesisModel::uniform(vec![coin(0.3)], 2, 2).unwrap();
        for tau in 1..=4 {
            assert_eq!(
                curiosity_v_exact(&lone, &History::empty(), tau).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn symmetric_actions_tie() {
        // Both actions are exact copies; q must agree and argmax break low.
        let sym = MarkovPredictor::new(
            0,
            vec![
                vec![vec![0.9, 0.1], vec![0.9, 0.1]],
                vec![vec![0.9, 0.1], vec![0.9, 0.1]],
            ],
        )
        .unwrap();
        let sym2 = MarkovPredictor::new(
            0,
            vec![
                vec![vec![0.1, 0.9], vec![0.1, 0.9]],
                vec![vec![0.1, 0.9], vec![0.1, 0.9]],
            ],
        )
        .unwrap();
        let model = HypothesisModel::uniform(vec![sym, sym2], 2, 2).unwrap();
        let h = History::empty();
        for tau in 1..=3 {
            let q0 = curiosity_q_exact(&model, &h, 0, tau).unwrap();
            let q1 = curiosity_q_exact(&model, &h, 1, tau).unwrap();
            let v = curiosity_v_exact(&model, &h, tau).unwrap();
            assert!((q0 - q1).abs() < 1e-13);
            assert!((v - q0).abs() < 1e-13);
            assert_eq!(optimal_action(&model, &h, tau, None).unwrap(), 0);
        }
    }

    #[test]
    fn discount_zero_and_one_step_reduce_to_expected_gain() {
        let model = two_coins(0.8, 0.2);
        let h = History::empty();
        for a in 0..model.action_count() {
            let g = expected_gain(&model, &h, a).unwrap();
            let q_zero = curiosity_q_discounted(&model, &h, a, 3, 0.0).unwrap();
            assert!((q_zero - g).abs() < 1e-15);
            for gamma in [0.0, 0.3, 0.9] {
                let q_one = curiosity_q_discounted(&model, &h, a, 1, gamma).unwrap();
                assert!((q_one - g).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn node_budget_guards_the_recursion() {
        let model = two_coins(0.8, 0.2);
        let err = curiosity_q_exact_with_budget(&model, &History::empty(), 0, 10, 1e3).unwrap_err();
        assert!(matches!(err, Error::ResourceBudget { .. }));
        assert!(curiosity_q_exact(&model, &History::empty(), 0, 0).is_err());
    }
}
