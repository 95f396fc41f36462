use thiserror::Error;

/// Errors produced by spectrum construction and the catalysis computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spectrum needs at least one entry")]
    EmptyInput,

    #[error("spectrum sums to {sum}, expected 1 within {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("spectrum entry {0} is negative")]
    NegativeEntry(f64),

    #[error("spectrum entry {0} is not finite")]
    NonFiniteEntry(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("spectrum dimension overflows u128")]
    DimensionOverflow,

    #[error("transformation is already deterministic (alpha^N <= 1/2); nothing to optimize")]
    DeterministicRegime,

    #[error("pairwise strategy needs an even number of copies, got {0}")]
    OddCopies(u32),

    #[error("cannot split {n} copies into {m_star} groups")]
    BadArity { n: u32, m_star: u32 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
