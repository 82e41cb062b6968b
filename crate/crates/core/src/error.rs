use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse partition {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("partition parts must be positive, got {0}")]
    NonPositivePart(i64),

    #[error("series constant term must be {expected} for {op}, found {found}")]
    ConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: String,
    },

    #[error("monomial {monomial} lies outside the truncation {truncation}")]
    OutsideTruncation { monomial: String, truncation: String },

    #[error("aux variable {0} is unbounded; cannot sum an infinite series in it")]
    UnboundedAux(String),

    #[error("negative exponent not allowed for {0}")]
    NegativeExponent(String),

    #[error("hbar exponent {exponent} exceeds the declared bound {bound}")]
    HbarOverflow { exponent: i64, bound: i64 },

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("pole: weight denominator vanishes at content {content}")]
    Pole { content: i64 },

    #[error("series is not invertible (zero constant term)")]
    NotInvertible,

    #[error("group size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
