use crate::label::TaxonLabel;
use crate::VertexId;
use thiserror::Error;

/// Errors raised by the structural operations and algorithms of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid taxon label {0:?}")]
    InvalidLabel(String),

    #[error("structural violation: {0}")]
    Validation(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("unknown taxon {0}")]
    UnknownLabel(TaxonLabel),

    #[error("duplicate taxon {0}")]
    DuplicateLabel(TaxonLabel),

    #[error("leaf sets differ")]
    LeafSetMismatch,

    #[error("subset is empty or not contained in the leaf set")]
    InvalidSubset,

    #[error("operation needs at least two leaves")]
    TooFewLeaves,

    #[error("reticulation {0} has in-degree greater than two; only binary networks are supported here")]
    NonBinaryReticulation(VertexId),

    #[error("unsupported network: {0}")]
    Unsupported(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("input trees contain duplicates (trees {0} and {1} are isomorphic)")]
    DuplicateTrees(usize, usize),

    #[error("trees must be binary")]
    NotBinary,

    #[error("malformed cherry-picking sequence: {0}")]
    MalformedSequence(String),

    #[error("sequence is not a tree-child cherry-picking sequence for the trees: {0}")]
    NotCherryPickingSequence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal postcondition failure: {0}")]
    Internal(String),

    #[error("too many taxa ({0}); at most 128 are supported by sequence checks")]
    TooManyTaxa(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
