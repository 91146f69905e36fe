use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    /// `gcd(a, b) != 1`, so `S(a, b)` has an infinite complement.
    #[error("S({a},{b}) is not a numerical semigroup: gcd(a,b) must be 1")]
    NotANumericalSemigroup { a: u64, b: u64 },

    #[error("n = {n} exceeds the exhaustive oracle limit of {limit}")]
    OracleLimit { n: u64, limit: u64 },

    #[error("n = {n} is outside the memoized range 0..={n_max}")]
    OutOfTable { n: u64, n_max: u64 },

    #[error("membership table bound {bound} exceeds the memory budget of {limit}")]
    MemoryBudget { bound: u64, limit: u64 },

    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        reason: &'static str,
    },

    #[error("malformed mu cache: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
