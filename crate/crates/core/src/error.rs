use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("unsupported rank {rank} for family {family}")]
    UnsupportedRank { family: String, rank: usize },
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("reflection group exceeds the enumeration cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("operation requires a type A root system")]
    WrongRootSystem,
    #[error("rank {0} is odd; the Pfaffian sum needs an even number of coordinates")]
    OddRank(usize),
    #[error("filtration degree {found} exceeds the configured bound {bound}")]
    DegreeBound { found: u32, bound: u32 },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("element is not in the requested subalgebra: {0}")]
    NotInSubalgebra(String),
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
