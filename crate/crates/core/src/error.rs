use thiserror::Error;

use crate::label::{EdgeLabel, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown edge label `{0}`")]
    UnknownEdge(EdgeLabel),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),

    #[error("duplicate edge label `{0}`")]
    DuplicateEdge(EdgeLabel),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(VertexId),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not biconnected")]
    NotBiconnected,

    #[error("{what}: size {actual} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("bond sides are not disjoint")]
    OverlappingSides,

    #[error("cut is not a bond")]
    NotABond,

    #[error("preorder ground set does not match the edge set of the graph")]
    GroundMismatch,

    #[error("not an enriched structure: {0}")]
    NotEnriched(String),

    #[error("classes [{0}] and [{1}] are not consecutive")]
    NotConsecutive(EdgeLabel, EdgeLabel),

    #[error("missing entry for bond {0}")]
    MissingBond(String),

    #[error("invalid bond subset: {0}")]
    InvalidBondSubset(String),

    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),

    #[error("cone is not in the fan")]
    ConeNotInFan,

    #[error("cone containing the subdivided face is not smooth")]
    NotSmooth,

    #[error("image cone is not strongly convex")]
    NotStronglyConvex,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("coordinate `{0}` is not strictly positive")]
    NonPositive(EdgeLabel),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn guard(what: &'static str, actual: usize, limit: usize) -> Self {
        Error::GuardExceeded {
            what,
            actual,
            limit,
        }
    }

    /// True for the guard-exceeded family; the CLI maps these to a dedicated exit code.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
