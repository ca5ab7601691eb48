use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed ring spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("GF({p}^{k}) requested but {p} is not prime")]
    NotPrime { p: u64, k: u32 },
    #[error("quotient polynomial `{0}` is not monic")]
    NonMonic(String),
    #[error("ring has {size} elements, over the budget of {budget}")]
    RingTooLarge { size: u64, budget: u64 },
    #[error("malformed element `{0}`")]
    MalformedElement(String),
    #[error("element {0} is not a unit")]
    NotUnit(String),
    #[error("{0} is not a root of the cyclotomic polynomial")]
    NotCyclotomicRoot(String),
    #[error("N must be at least {min}, got {n}")]
    BadOrder { n: usize, min: usize },
    #[error("q-binomial index out of range: i={i}, n={n}")]
    BinomialRange { n: i64, i: i64 },
    #[error("parameters of the two operands differ")]
    ParameterMismatch,
    #[error("alpha={alpha} is not divisible by N={n}")]
    NotDivisible { alpha: u64, n: usize },
    #[error("symbol {0} is not supported here")]
    UnsupportedSymbol(String),
    #[error("symbol {0} has no assigned image")]
    UnassignedSymbol(String),
    #[error("malformed polynomial `{input}`: {reason}")]
    MalformedPolynomial { input: String, reason: String },
    #[error("coordinate space of {size} words exceeds the budget of {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("(s, t) is not a valid witness: {0}")]
    InvalidWitness(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
