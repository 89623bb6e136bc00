use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two containers that must have matching shapes did not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A state, action, or outcome index was out of range.
    #[error("index out of range: {name} = {index}, valid range 0..{bound}")]
    IndexOutOfRange {
        name: &'static str,
        index: usize,
        bound: usize,
    },

    /// An observation that the current mixture assigns probability zero.
    #[error("impossible observation: p(o|ha) = 0 for action {action}, observation {observation}")]
    ImpossibleObservation { action: usize, observation: usize },

    /// The current posterior puts mass where the reference has none.
    #[error(
        "support mismatch: hypothesis {hypothesis} has positive weight but zero reference weight"
    )]
    SupportMismatch { hypothesis: usize },

    /// An exhaustive computation would exceed the configured node budget.
    #[error("resource budget exceeded: {required:.3e} nodes needed, budget {budget:.3e}")]
    ResourceBudget { required: f64, budget: f64 },

    /// An iterative solver failed to reach its tolerance.
    #[error(
        "no convergence after {iterations} iterations (residual {residual:.3e}, tol {tol:.3e})"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    /// A text payload could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
