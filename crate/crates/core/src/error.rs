use thiserror::Error;

/// Errors raised by field, polynomial, function-field and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {0} exceeds the supported size 2^20")]
    FieldTooLarge(u128),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid base order {base} for a field of order {order}")]
    InvalidBaseOrder { base: u64, order: u64 },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("function has a pole at {0}")]
    Pole(String),
    #[error("function does not lie in L(G)")]
    NotInRiemannRochSpace,
    #[error("supp(G) ∩ supp(D) ≠ ∅: {0} lies in both")]
    SupportOverlap(String),
    #[error("places in D must be pairwise distinct: {0} repeated")]
    DuplicatePlace(String),
    #[error("D may only contain finite places, found {0}")]
    InfinitePlaceInD(String),
    #[error("D must contain at least one place")]
    EmptyD,
    #[error("place {place} has degree {degree}, violating (deg P, p) = 1 for p = {p}")]
    NotCoprime { place: String, degree: usize, p: u32 },
    #[error("(d,p)=1 is required, got d = {d}, p = {p}")]
    GridNotCoprime { d: usize, p: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("enumerating {0} codewords exceeds the limit of 10^7")]
    EnumerationTooLarge(u128),
    #[error("the code has dimension 0")]
    ZeroDimensionalCode,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
