use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The simultaneous root iteration exhausted its budget.  The best
    /// residuals reached are attached so the caller can decide whether to
    /// retry with a larger budget.
    #[error("root iteration did not converge (worst residual {worst_residual:.3e} after {iterations} iterations)")]
    NonConvergence {
        iterations: usize,
        worst_residual: f64,
    },

    /// An input outside the operation's domain (e.g. `v = 0` where a
    /// nonzero impurity is required, or a vanishing derivative).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A node or site index outside its valid range.
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}
