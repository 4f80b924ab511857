//! Flow-equivalence invariants and graph moves for deciding Morita
//! equivalence and isomorphism of purely infinite simple unital Leavitt path
//! algebras of finite graphs.

pub mod classify;
pub mod exactla;
pub mod flowsearch;
pub mod graph;
pub mod invariants;
pub mod moves;
pub mod random;
pub mod scalar;
pub mod script;
pub mod selftest;

use num_bigint::BigInt;

pub use exactla::Answer;
pub use graph::{Edge, EdgeId, GraphError, MultiGraph, VertexId};
pub use scalar::IntScalar;

pub type Int = BigInt;
pub type IntMatrix = exactla::Matrix<BigInt>;
pub type Group = exactla::AbelianGroup<BigInt>;
pub type Pointed = exactla::PointedGroup<BigInt>;
pub type Smith = exactla::SmithDecomposition<BigInt>;
