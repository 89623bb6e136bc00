//! Comparison explorers: uniform-random actions, greedy one-step gain, and
//! tabular Q-learning rewarded with realized information gain. All three share
//! the DP explorer's observe-and-log path, so posteriors evolve identically
//! given the same transition stream.

use crate::env::{step, EnvSpec, RngStream};
use crate::error::{Error, Result};
use crate::planner::check_env_table;
use crate::posterior::PosteriorTable;
use crate::trajectory::{ExploreResult, StepRecorder};

/// Tabular Q-learning hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QLearnParams {
    pub learning_rate: f64,
    pub epsilon: f64,
    pub gamma: f64,
    pub init_q: f64,
}

impl Default for QLearnParams {
    fn default() -> Self {
        Self {
            learning_rate: 0.5,
            // Larger exploration noise alone walks the agent well out of its
            // starting clique over a few thousand steps.
            epsilon: 0.01,
            gamma: 0.95,
            init_q: 0.0,
        }
    }
}

impl QLearnParams {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.learning_rate) {
            return Err(Error::Domain(format!(
                "learning rate must lie in [0, 1], got {}",
                self.learning_rate
            )));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::Domain(format!(
                "epsilon must lie in [0, 1], got {}",
                self.epsilon
            )));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::Domain(format!(
                "discount must lie in [0, 1), got {}",
                self.gamma
            )));
        }
        if !self.init_q.is_finite() {
            return Err(Error::Domain("init_q must be finite".into()));
        }
        Ok(())
    }
}

/// Uniform-random exploration: each action with equal probability.
pub fn explore_random(
    env: &EnvSpec,
    table: &PosteriorTable,
    steps: usize,
    seed: u64,
) -> Result<ExploreResult> {
    check_env_table(env, table)?;
    let mut recorder = StepRecorder::new(table);
    let mut rng = RngStream::new(seed);
    let mut state = env.initial_state();
    for t in 1..=steps {
        let action = rng.next_below(env.a_count());
        let next = step(env, state, action, &mut rng)?;
        recorder.record(t, state, action, next)?;
        state = next;
    }
    Ok(recorder.finish())
}

/// Greedy exploration: at each step, the action maximizing the immediate
/// expected gain of the current state's rows (lowest index on ties).
pub fn explore_greedy(
    env: &EnvSpec,
    table: &PosteriorTable,
    steps: usize,
    seed: u64,
) -> Result<ExploreResult> {
    check_env_table(env, table)?;
    let mut recorder = StepRecorder::new(table);
    let mut rng = RngStream::new(seed);
    let mut state = env.initial_state();
    for t in 1..=steps {
        let mut action = 0;
        let mut best = f64::NEG_INFINITY;
        for a in 0..env.a_count() {
            let gain = recorder.table().pair_gain(state, a)?;
            if gain > best {
                best = gain;
                action = a;
            }
        }
        let next = step(env, state, action, &mut rng)?;
        recorder.record(t, state, action, next)?;
        state = next;
    }
    Ok(recorder.finish())
}

/// ε-greedy tabular Q-learning with the realized information gain of each
/// transition (computed against the pre-update posterior) as the reward.
pub fn explore_qlearning(
    env: &EnvSpec,
    table: &PosteriorTable,
    params: &QLearnParams,
    steps: usize,
    seed: u64,
) -> Result<ExploreResult> {
    check_env_table(env, table)?;
    params.validate()?;
    let a_count = env.a_count();
    let mut q = vec![params.init_q; env.s_count() * a_count];
    let mut recorder = StepRecorder::new(table);
    let mut rng = RngStream::new(seed);
    let mut state = env.initial_state();
    for t in 1..=steps {
        let explore = rng.next_f64() < params.epsilon;
        let action = if explore {
            rng.next_below(a_count)
        } else {
            let mut best = 0;
            let mut best_value = f64::NEG_INFINITY;
            for a in 0..a_count {
                let v = q[state * a_count + a];
                if v > best_value {
                    best_value = v;
                    best = a;
                }
            }
            best
        };
        let next = step(env, state, action, &mut rng)?;
        let reward = recorder.record(t, state, action, next)?;
        let next_best = (0..a_count)
            .map(|a| q[next * a_count + a])
            .fold(f64::NEG_INFINITY, f64::max);
        let target = reward + params.gamma * next_best;
        let cell = &mut q[state * a_count + action];
        *cell += params.learning_rate * (target - *cell);
        state = next;
    }
    Ok(recorder.finish())
}
