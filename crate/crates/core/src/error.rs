use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("no default modulus for GF({q}^{m}); supply one explicitly")]
    NoDefaultModulus { q: u32, m: usize },
    #[error("field GF({q}^{m}) is too large for the packed representation")]
    FieldTooLarge { q: u32, m: usize },
    #[error("element {value} is outside a field of order {order}")]
    ElementOutOfRange { value: u32, order: u32 },
    #[error("cannot parse field element {0:?}")]
    ParseElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in incompatible fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is rank deficient (rank {rank}, need {needed})")]
    RankDeficient { rank: usize, needed: usize },
    #[error("invalid GRS specification: {0}")]
    InvalidGrs(String),
    #[error("GRS supports differ")]
    SupportMismatch,
    #[error(
        "enumeration needs {needed} steps, over the budget of {budget}; \
         construct the code as GRS to use the n-k+1 shortcut"
    )]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("{what} index {value} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("unusable scheme: {0}")]
    UnusableScheme(String),
    #[error(
        "randomness space of {needed} points exceeds the exhaustive limit {limit}; use rank mode"
    )]
    ExhaustiveTooLarge { needed: u128, limit: u128 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
