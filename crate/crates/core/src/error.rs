use num_bigint::BigInt;
use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The first group are domain errors: the input `n` (or a prime handed to a
/// low-level routine) is outside the supported range. `InternalInconsistency`
/// and `UnreachableCase` indicate a bug and should never surface in practice.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n = {0} must be greater than 1")]
    TooSmall(BigInt),

    #[error("could not parse {0:?} as a positive integer")]
    NotAnInteger(String),

    #[error("n = {0} is divisible by 3")]
    DivisibleByThree(BigInt),

    #[error("n = {n} is not cube-free: {prime}^{exponent} divides it")]
    NotCubeFree { n: BigInt, prime: BigInt, exponent: u32 },

    #[error("n = {n} has {count} distinct prime factors, expected exactly 2")]
    WrongFactorCount { n: BigInt, count: usize },

    #[error("{0} is not a prime congruent to 1 mod 3")]
    NotSplitPrime(BigInt),

    #[error("{0} is not a prime congruent to 2 mod 3")]
    NotInertPrime(BigInt),

    #[error("division by zero in Z[zeta]")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{0} has norm divisible by 3 and no primary associate")]
    NoPrimaryAssociate(String),

    #[error("{0} is not invertible in the residue ring")]
    NotInvertible(String),

    #[error("{value} is divisible by the prime {prime}")]
    DivisibleByPrime { value: String, prime: String },

    #[error("witness with a + b = 0 does not map to the curve")]
    DegenerateWitness,

    #[error("Selmer dimension {t} is outside [1, {max}]")]
    DimensionOutOfRange { t: u32, max: u32 },

    #[error("no closed-form branch matches: {0}")]
    UnreachableCase(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// True for errors caused by the input rather than by the library.
    pub fn is_domain_error(&self) -> bool {
        !matches!(
            self,
            Error::UnreachableCase(_) | Error::InternalInconsistency(_) | Error::DimensionOutOfRange { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
