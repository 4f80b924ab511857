//! Exact integer linear algebra: determinants, Smith normal form, cokernels
//! and finitely generated abelian groups.

mod det;
mod group;
mod matrix;
mod pointed;
mod snf;

use thiserror::Error;

pub use det::det;
pub use group::{cokernel, group_iso, AbelianGroup, Cokernel, PointedGroup};
pub use matrix::Matrix;
pub use pointed::{pointed_equivalent, pointed_equivalent_with, Answer, PointedLimits};
pub use snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("invariant factor {0} must be at least 2")]
    BadInvariantFactor(String),
    #[error("invariant factors {0} do not form a divisibility chain")]
    DivisibilityChain(String),
}
