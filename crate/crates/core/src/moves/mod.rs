//! Graph moves with checked preconditions, and the vertex-class maps they
//! induce on `coker(I − Aᵗ)`.
//!
//! Every move returns a fresh graph; vertex numbering of the result is
//! documented per move.

mod basic;
mod classmap;
mod delay;
mod gadget;
mod partition;
mod shift;
mod split;

use thiserror::Error;

use crate::graph::{GraphError, VertexId};

pub use basic::{contract, contractible_pairs, eliminate_source, eliminate_source_class_map, expand, expand_class_map};
pub use classmap::{verify_vertex_class_map, VertexClassMap};
pub use delay::{in_delay, out_delay, DelayKind, DrinenVector};
pub use gadget::{default_attach, minus, minus1, minus1_at, minus1_class_map, minus_at};
pub(crate) use partition::parse_class_line;
pub use partition::{Partition, Side};
pub use shift::{shift, shiftable_pairs};
pub use split::{
    in_amalgamate, in_amalgamate_with_partition, in_split, out_amalgamate, out_amalgamate_with_partition, out_split,
    SplitFactorization,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertex {0} is not a source")]
    NotASource(VertexId),
    #[error("cannot remove the only vertex of a graph")]
    SingletonGraph,
    #[error("({v}, {star}) is not an expansion pattern: {reason}")]
    ContractPattern { v: VertexId, star: VertexId, reason: String },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("grouping is not an amalgamation: {0}")]
    NotRealizable(String),
    #[error("invalid delay vector: {0}")]
    BadDelay(String),
    #[error("shift not applicable: {0}")]
    ShiftPrecondition(String),
    #[error("no vertex lies on a cycle")]
    NoCycleVertex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
