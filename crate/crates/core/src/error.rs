use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {rank} is out of bounds for series {series}")]
    RankOutOfBounds { series: char, rank: usize },

    #[error("cannot parse algebra `{0}` (expected e.g. `E6`, `B4`)")]
    ParseAlgebra(String),

    #[error("cannot parse weight `{0}` (expected e.g. `(1,0,-1)`)")]
    ParseWeight(String),

    #[error("node index {index} is out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight system would hold {needed} weights, capacity is {limit}")]
    Capacity { needed: u128, limit: usize },

    #[error("{0} has no maximal regular semisimple subalgebras of full rank (type A ambient)")]
    UnsupportedAmbient(String),

    #[error("node {node} has mark {mark}, which is not prime")]
    MarkNotPrime { node: usize, mark: i64 },

    #[error("node {node} has mark {mark}; a reductive deletion needs mark 1")]
    MarkNotOne { node: usize, mark: i64 },

    #[error("{0} has no mark-1 node")]
    NoMarkOneNode(String),

    #[error("node {node} (mark {mark}) admits neither a semisimple nor a reductive deletion")]
    NoDeletion { node: usize, mark: i64 },

    #[error("embedding validation failed: {0}")]
    InvalidEmbedding(String),

    #[error("lattice is not of full rank")]
    NotFullRank,

    #[error("branching consistency check failed: {0}")]
    Consistency(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}
