use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base b = {0} is invalid: b must be at least 2")]
    BaseTooSmall(i64),
    #[error("embedding dimension n = {0} is invalid: n must be at least 2")]
    DimensionTooSmall(i64),
    #[error("step a = {0} is invalid: a must be at least 1")]
    StepTooSmall(i64),
    #[error("step a = {a} is not coprime to a1 = {a1}: gcd({a}, {a1}) = {gcd} != 1")]
    NotCoprime { a: i64, a1: i64, gcd: i64 },
    #[error("parameters (b = {b}, n = {n}, a = {a}) overflow 64-bit generator arithmetic")]
    Overflow { b: i64, n: i64, a: i64 },

    #[error("multiplicity a1 = {a1} exceeds the supported limit {limit}")]
    TooLarge { a1: i64, limit: i64 },

    #[error("negative integer {0} cannot be tested for membership")]
    NegativeElement(i64),
    #[error("modulus {0} is not a positive element of the semigroup")]
    NotInSemigroup(i64),

    #[error("homological degree j = {j} is out of range 1..={max}")]
    LevelOutOfRange { j: usize, max: usize },
    #[error("polynomial is not S-homogeneous: found terms of degrees {0} and {1}")]
    NotHomogeneous(i64, i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("scan bound {bound} is below the required minimum {required}")]
    BoundTooSmall { bound: i64, required: i64 },
    #[error("cannot parse {0}")]
    Parse(String),

    /// A structural claim about the resolution failed for these parameters.
    #[error("invariant breach: {0}")]
    Invariant(String),
}
