use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Instance parameters violate `n_i >= a_i > 0` or `1 <= d <= sum a_i`.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A precondition on an operation's inputs failed.
    #[error("input error: {0}")]
    Input(String),

    /// An enumeration or verification exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Random specialization kept producing singular blocks.
    #[error("sampling failed: {0}")]
    Sampling(String),

    /// A fixpoint loop hit its hard iteration cap.
    #[error("iteration cap reached: {0}")]
    IterationCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
