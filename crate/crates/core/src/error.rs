use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation exceeded: degree {degree} is above the bound {bound}")]
    TruncationExceeded { degree: i32, bound: i32 },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("composite of consecutive differentials is nonzero")]
    CompositionNotZero,
    #[error("unsupported differential: {0}")]
    UnsupportedDifferential(String),
    #[error("algebra is not graded commutative: {0}")]
    NotCommutative(String),
    #[error("chain map violation: {0}")]
    ChainMapViolation(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("map is not surjective in degree {0}")]
    NotSurjectiveHere(i32),
    #[error("kernel is not acyclic in degree {0}")]
    KernelNotAcyclicHere(i32),
    #[error("element is not a cycle: {0}")]
    NotACycle(String),
    #[error("Cartan formula mismatch: {0}")]
    CartanMismatch(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("unsupported prime {0}: {1}")]
    UnsupportedPrime(u32, String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
