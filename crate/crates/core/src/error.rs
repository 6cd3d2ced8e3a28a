use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operation needed coefficients beyond a truncation order.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// Division by a series whose leading term is not invertible.
    #[error("singular divisor: {0}")]
    SingularDivisor(String),

    /// A precondition on the operands was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// Coefficient index out of the stored range.
    #[error("index {index} out of range [{min}, {max}]")]
    Index { index: i64, min: i64, max: i64 },

    /// An internal mathematical invariant failed; indicates a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// A brute-force enumeration was asked to exceed its cap.
    #[error("resource limit: requested {requested}, cap is {cap}")]
    Resource { requested: usize, cap: usize },

    /// A floating-point evaluation could not reach the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// A square-root multiplier landed off {+1, -1}.
    #[error("branch error: value {re}{im:+}i is not within tolerance of +1 or -1")]
    Branch { re: f64, im: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
