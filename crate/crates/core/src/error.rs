use num_bigint::BigInt;
use thiserror::Error;

use crate::cone::MAX_RANK;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),

    #[error("no finite Hilbert basis: cone has a nontrivial lineality space")]
    NoFiniteHilbertBasis,

    #[error("empty GIT class: weight lies outside the weight cone")]
    EmptyGitClass,

    #[error("weight {0} lies outside the image of the weight cone")]
    OutsideWeightCone(String),

    #[error("poset too large: {0} generators, at most 16 supported")]
    PosetTooLarge(usize),

    #[error("embedding is not injective: rank {rank} with {cols} columns")]
    NonInjectiveEmbedding { rank: usize, cols: usize },

    #[error("embedding image is not saturated: invariant factor {factor}")]
    NonSaturatedEmbedding { factor: BigInt },

    #[error("evaluation unbounded: weight is not in the dual of the tail cone")]
    EvaluationUnbounded,

    #[error("tail cones differ")]
    TailMismatch,

    #[error("empty polyhedron")]
    EmptyPolyhedron,

    #[error("saturation search exhausted its certified bound k <= {bound}")]
    BoundExhausted { bound: u64 },

    #[error("the quotient torus does not act effectively; unspanned directions: {unspanned}")]
    IneffectiveQuotientAction { unspanned: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}
