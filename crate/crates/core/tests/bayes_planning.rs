//! Planner behavior certified against brute-force enumeration oracles on the
//! shared fixture models.

use curiosity_core::bayes::{
    curiosity_q_discounted, curiosity_q_exact, curiosity_v_exact, expected_gain, info_gain,
    optimal_action, posterior_update, History,
};
use curiosity_testkit::{
    enumerate_policy_q_values, enumerate_policy_v_values, fixed_policy_q, fixture_models,
    max_marginal_terminal_gain, terminal_gain_expectation,
};

type PolicyFn = Box<dyn Fn(&History) -> usize>;

#[test]
fn myopic_action_loses_to_delayed_information() {
    let (name, model) = fixture_models().swap_remove(2);
    assert_eq!(name, "delayed_information");
    let h = History::empty();
    assert_eq!(optimal_action(&model, &h, 1, None).unwrap(), 0);
    assert_eq!(optimal_action(&model, &h, 2, None).unwrap(), 1);
    // The enumeration oracle agrees that no 2-step policy beats starting
    // with action 1.
    let q0 = enumerate_policy_q_values(&model, &h, 0, 2, 1.0);
    let q1 = enumerate_policy_q_values(&model, &h, 1, 2, 1.0);
    let best0 = q0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let best1 = q1.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(best1 > best0);
}

#[test]
fn additivity_of_expected_gain() {
    // E_{o′|h′a′} g(h″‖h) = g(h′‖h) + E_{o′|h′a′} g(h″‖h′) over every
    // reachable one-step extension h′ and follow-up action a′.
    for (name, model) in fixture_models() {
        let h = History::empty();
        for a in 0..model.action_count() {
            let predictive = model.predictive(&h, a).unwrap();
            for (o, &p) in predictive.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let m1 = posterior_update(&model, &h, a, o).unwrap();
                let mut h1 = h.clone();
                h1.push(a, o);
                let g1 = info_gain(&m1, &model).unwrap();
                for a2 in 0..model.action_count() {
                    let predictive2 = m1.predictive(&h1, a2).unwrap();
                    let mut lhs = 0.0;
                    let mut rhs_tail = 0.0;
                    for (o2, &p2) in predictive2.iter().enumerate() {
                        if p2 == 0.0 {
                            continue;
                        }
                        let m2 = posterior_update(&m1, &h1, a2, o2).unwrap();
                        lhs += p2 * info_gain(&m2, &model).unwrap();
                        rhs_tail += p2 * info_gain(&m2, &m1).unwrap();
                    }
                    let rhs = g1 + rhs_tail;
                    assert!((lhs - rhs).abs() < 1e-10, "{name}: {lhs} vs {rhs}");
                }
            }
        }
    }
}

#[test]
fn posterior_is_a_martingale() {
    for (name, model) in fixture_models() {
        let h = History::empty();
        for a in 0..model.action_count() {
            let predictive = model.predictive(&h, a).unwrap();
            let mut averaged = vec![0.0; model.hypothesis_count()];
            for (o, &p) in predictive.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let updated = posterior_update(&model, &h, a, o).unwrap();
                for (acc, w) in averaged.iter_mut().zip(updated.weights()) {
                    *acc += p * w;
                }
            }
            for (avg, w) in averaged.iter().zip(model.weights()) {
                assert!((avg - w).abs() < 1e-12, "{name}");
            }
        }
    }
}

#[test]
fn greedy_backward_induction_is_optimal() {
    for (name, model) in fixture_models() {
        let h = History::empty();
        for tau in 1..=3 {
            let v = curiosity_v_exact(&model, &h, tau).unwrap();
            let all_v = enumerate_policy_v_values(&model, &h, tau, 1.0);
            for value in &all_v {
                assert!(v >= value - 1e-12, "{name}, tau {tau}");
            }
            let best = all_v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!((v - best).abs() < 1e-10, "{name}, tau {tau}");
            for a in 0..model.action_count() {
                let q = curiosity_q_exact(&model, &h, a, tau).unwrap();
                for value in enumerate_policy_q_values(&model, &h, a, tau, 1.0) {
                    assert!(q >= value - 1e-12, "{name}, tau {tau}, action {a}");
                }
            }
        }
    }
}

#[test]
fn one_step_values_reduce_to_expected_gain_on_fixtures() {
    for (name, model) in fixture_models() {
        let h = History::empty();
        for a in 0..model.action_count() {
            let q = curiosity_q_exact(&model, &h, a, 1).unwrap();
            let g = expected_gain(&model, &h, a).unwrap();
            assert!((q - g).abs() < 1e-15, "{name}");
        }
    }
}

#[test]
fn discounted_value_is_the_stated_mix_of_undiscounted_values() {
    // For a fixed policy, q^{τ,γ} = (1−γ) Σ_t γ^{t−1} q^t + γ^τ q^τ.
    let gamma = 0.7;
    for (name, model) in fixture_models() {
        let h = History::empty();
        let policy = |hist: &History| hist.len() % 2;
        for a in 0..model.action_count() {
            let discounted = fixed_policy_q(&model, &h, a, 3, gamma, &policy);
            let undiscounted: Vec<f64> = (1..=3)
                .map(|t| fixed_policy_q(&model, &h, a, t, 1.0, &policy))
                .collect();
            let mix = (1.0 - gamma)
                * (undiscounted[0] + gamma * undiscounted[1] + gamma * gamma * undiscounted[2])
                + gamma.powi(3) * undiscounted[2];
            assert!((discounted - mix).abs() < 1e-12, "{name}");
        }
    }

    // With a strictly dominant action the optimal planner follows one fixed
    // policy, so the identity holds for the public optimal values too.
    let (_, model) = fixture_models().swap_remove(0);
    let h = History::empty();
    let discounted = curiosity_q_discounted(&model, &h, 0, 3, gamma).unwrap();
    let qs: Vec<f64> = (1..=3)
        .map(|t| curiosity_q_exact(&model, &h, 0, t).unwrap())
        .collect();
    let mix =
        (1.0 - gamma) * (qs[0] + gamma * qs[1] + gamma * gamma * qs[2]) + gamma.powi(3) * qs[2];
    assert!((discounted - mix).abs() < 1e-12);
}

#[test]
fn fixed_policy_increments_telescope() {
    // q_π^{τ+1,γ} − q_π^{τ,γ} = γ^τ · E[terminal expected gain].
    let gamma = 0.6;
    for (name, model) in fixture_models() {
        let h = History::empty();
        let policies: Vec<PolicyFn> = vec![
            Box::new(|_: &History| 0),
            Box::new(|_: &History| 1),
            Box::new(|hist: &History| hist.last_observation().unwrap_or(0)),
        ];
        for policy in &policies {
            for a in 0..model.action_count() {
                for tau in 1..=3u32 {
                    let lhs = fixed_policy_q(&model, &h, a, tau + 1, gamma, policy)
                        - fixed_policy_q(&model, &h, a, tau, gamma, policy);
                    let rhs = gamma.powi(tau as i32)
                        * terminal_gain_expectation(&model, &h, a, tau, policy);
                    assert!((lhs - rhs).abs() < 1e-10, "{name}, tau {tau}");
                }
            }
        }
    }
}

#[test]
fn optimal_increments_are_bounded_and_nonnegative() {
    // 0 ≤ q^{τ+1,γ} − q^{τ,γ} ≤ γ^τ · (max-marginalized terminal gain).
    let gamma = 0.6;
    for (name, model) in fixture_models() {
        let h = History::empty();
        for a in 0..model.action_count() {
            for tau in 1..=3u32 {
                let low = curiosity_q_discounted(&model, &h, a, tau, gamma).unwrap();
                let high = curiosity_q_discounted(&model, &h, a, tau + 1, gamma).unwrap();
                assert!(high >= low - 1e-13, "{name}: monotone in tau");
                let cap = gamma.powi(tau as i32) * max_marginal_terminal_gain(&model, &h, a, tau);
                assert!(high - low <= cap + 1e-12, "{name}, tau {tau}");
            }
        }
    }
}
