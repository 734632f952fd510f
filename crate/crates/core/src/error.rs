use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside an operation's domain (zero modulus,
    /// malformed spectrum, non-unit acting element, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A prime was required and the input is not one.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The hypotheses of a closed-form theorem are violated; the formula
    /// would silently return a wrong (or fractional) value if applied.
    #[error("unsupported hypothesis: {0}")]
    Hypothesis(String),

    /// The enumeration search space exceeds the configured ceiling.
    #[error("search space estimate {estimate} exceeds enumeration ceiling {ceiling}")]
    ResourceLimit { estimate: BigUint, ceiling: BigUint },

    /// A series coefficient was requested beyond the truncation order.
    #[error("coefficient index {index} exceeds truncation order {order}")]
    Range { index: u64, order: u64 },

    /// An exactness guarantee failed (a division that a theorem proves
    /// exact left a remainder). Always a bug, never expected.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
