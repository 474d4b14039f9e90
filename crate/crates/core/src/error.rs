use num_bigint::BigInt;
use thiserror::Error;

use crate::base::BaseElem;

/// Everything fallible in this crate reports one of these.  Mixing carriers,
/// feeding the ∘-unit to a factorization routine, or asking for a quotient
/// with a bad modulus is an `Err`, never a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity must be at least 2 (got {0})")]
    ArityTooSmall(u64),

    #[error("expected a tuple of length {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("elements live in different carriers")]
    CarrierMismatch,

    #[error("operation is not defined on this carrier")]
    UnsupportedCarrier,

    #[error("modulus must be at least 2 (got {0})")]
    BadModulus(BigInt),

    #[error("modulus {m} is not coprime to {q}")]
    ModulusNotCoprime { m: BigInt, q: BigInt },

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: BigInt, m: BigInt },

    #[error("zero has no factorization into classical primes")]
    ZeroInput,

    #[error("{0} is a unit; units have no irreducible factorization")]
    UnitInput(BaseElem),

    #[error("the absorbing element is neither a unit nor a product of irreducibles")]
    AbsorbingInput,

    #[error("{0} is not a unit")]
    NotAUnit(BaseElem),

    #[error("no absorbing element exists in this carrier")]
    NoAbsorbingElement,

    #[error("carrier is infinite; this operation needs a finite carrier")]
    InfiniteCarrier,

    #[error("sampling an infinite carrier needs an explicit window")]
    MissingWindow,

    #[error("the given set is not an ideal: {reason}")]
    NotAnIdeal { reason: String },

    #[error("the empty ideal has no generator")]
    EmptyIdeal,

    #[error("{0} does not generate a norm ideal here")]
    BadGenerator(BigInt),

    #[error("{0} is not a prime element")]
    NotPrimeElement(BigInt),

    #[error("invalid seed list: {0}")]
    InvalidSeed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
