use thiserror::Error;

/// Errors raised by the form calculus, the closed-form constructors and the harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid atom name {0:?}")]
    InvalidAtom(String),
    #[error("zero has no square class")]
    ZeroClass,
    #[error("negative count {0}")]
    NegativeCount(i64),
    #[error("negative power {0}")]
    NegativePower(i64),
    #[error("use minus_transform for negative upper index (got n = {0})")]
    NegativeUpperIndex(i64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration too large; use convolution route ({count} terms, cap {cap})")]
    EnumerationTooLarge { count: String, cap: u64 },
    #[error("Hyp fill impossible: residue dimension {residue} against total {total}")]
    HypFill { residue: String, total: String },
    #[error("table coefficient not integral: {0}")]
    NotIntegral(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("missing parameter {param:?} for identity {id}")]
    MissingParam { id: String, param: String },
    #[error("parameter domain violation for {id}: {constraint}")]
    Domain { id: String, constraint: String },
    #[error("invalid form data: {0}")]
    InvalidData(String),
    #[error("unknown field mode {0:?}")]
    UnknownMode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
