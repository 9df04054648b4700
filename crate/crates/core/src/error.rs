use thiserror::Error;

use crate::relation::CompatibilityVerdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("empty interval: {0} is not below {1}")]
    EmptyInterval(String, String),

    #[error("poset has no unique minimum")]
    NoUniqueMinimum,

    #[error("{what} exceeds bound: got {got}, limit {limit}")]
    SizeBound {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    #[error("relation `{relation}` is not applicable: requires {needs}")]
    InapplicableRelation {
        relation: String,
        needs: &'static str,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("relation is not bialgebra compatible: {}", .0.summary())]
    NotCompatible(Box<CompatibilityVerdict>),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("incidence functions live on different relations")]
    RelationMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a refinement: [{0}] and [{1}] share a fine class but not a coarse one")]
    NotRefinement(String, String),

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
