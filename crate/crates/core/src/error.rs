use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("{value} is not divisible by {by}")]
    NotDivisible { value: String, by: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not an algebraic integer: {0}")]
    NotIntegral(String),
    #[error("malformed set tuple: {0}")]
    MalformedSetTuple(String),
    #[error("element is not in G(de,e,r)")]
    NotInSubgroup,
    #[error("component {0} is not a {1}-core")]
    NonCoreComponent(usize, u32),
    #[error("bad prime {p}: must be prime and coprime to de = {de}")]
    BadPrime { p: u32, de: u32 },
    #[error("blocks have different p-weights: {left:?} vs {right:?}")]
    WeightMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("cannot pair a defect-zero block with a block of positive defect")]
    MixedDefect,
    #[error("blocks have different epsilon-stabilizers; psi does not preserve orbits")]
    StabilizerMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
