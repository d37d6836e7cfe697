use thiserror::Error;

/// Errors raised by the arithmetic, cyclotomic and verification layers.
///
/// Budget exhaustion is never an error: it is reported through incomplete
/// factorizations and `Unresolved` statuses instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero modulus")]
    ZeroModulus,
    #[error("not invertible")]
    NotInvertible,
    #[error("not a unit")]
    NotAUnit,
    #[error("zero has no factorization")]
    ZeroFactorization,
    #[error("incomplete factorization")]
    IncompleteFactorization,
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
    #[error("cyclotomic identity violated: {0}")]
    CyclotomicIdentityViolated(String),
    #[error("identity requires odd n")]
    RequiresOddN,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("use direct mode for n < 3")]
    UseDirectMode,
    #[error("no witness in cyclotomic part")]
    NoWitness,
    #[error("reduce first: x and y must be coprime")]
    ReduceFirst,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
