//! The `E₋` and `E₁₋` gadgets, which flip the sign of `det(I − Aᵗ)`.
//!
//! Both attach at a vertex `a` on a cycle (by default the highest-indexed
//! one) and append new vertices `x = n`, `y = n + 1` (and `z = n + 2`):
//!
//! ```text
//! a → x,  x → a,  x → x,  x → y,  y → x,  y → y      (E₋)
//! plus z → a                                         (E₁₋)
//! ```

use crate::graph::{Edge, MultiGraph, VertexId};
use crate::moves::{MoveError, VertexClassMap};

/// The vertex gadgets attach to unless told otherwise.
pub fn default_attach(g: &MultiGraph) -> Result<VertexId, MoveError> {
    g.cycle_vertices().last().copied().ok_or(MoveError::NoCycleVertex)
}

fn gadget(g: &MultiGraph, attach: Option<VertexId>, with_source: bool) -> Result<MultiGraph, MoveError> {
    let a = match attach {
        Some(a) => {
            g.check_vertex(a)?;
            if !g.cycle_vertices().contains(&a) {
                return Err(MoveError::NoCycleVertex);
            }
            a
        }
        None => default_attach(g)?,
    };
    let n = g.vertex_count();
    let (x, y, z) = (n, n + 1, n + 2);
    let mut labels = g.labels().to_vec();
    let mut edges = g.edges().to_vec();
    let mut add = |s, t| edges.push(Edge { source: s, target: t });
    add(a, x);
    add(x, a);
    add(x, x);
    add(x, y);
    add(y, x);
    add(y, y);
    let count = if with_source {
        add(z, a);
        3
    } else {
        2
    };
    for k in 1..=count {
        labels.push(format!("{}-{k}", g.label(a)));
    }
    Ok(MultiGraph::with_labels(labels, edges)?)
}

/// `E₋`, attached at the default vertex.
pub fn minus(g: &MultiGraph) -> Result<MultiGraph, MoveError> {
    gadget(g, None, false)
}

pub fn minus_at(g: &MultiGraph, attach: VertexId) -> Result<MultiGraph, MoveError> {
    gadget(g, Some(attach), false)
}

/// `E₁₋`, attached at the default vertex.
pub fn minus1(g: &MultiGraph) -> Result<MultiGraph, MoveError> {
    gadget(g, None, true)
}

pub fn minus1_at(g: &MultiGraph, attach: VertexId) -> Result<MultiGraph, MoveError> {
    gadget(g, Some(attach), true)
}

/// The map from `E₁₋` back to `E` that carries unit class to unit class:
/// old vertices go to themselves, `x ↦ 0`, `y ↦ −a`, `z ↦ a`.
pub fn minus1_class_map(g: &MultiGraph, attach: VertexId) -> Result<VertexClassMap, MoveError> {
    g.check_vertex(attach)?;
    let n = g.vertex_count();
    let mut images: Vec<Vec<i64>> = g.vertices().map(|v| super::basic::unit(n, v)).collect();
    images.push(vec![0; n]);
    let mut y = vec![0; n];
    y[attach] = -1;
    images.push(y);
    images.push(super::basic::unit(n, attach));
    Ok(VertexClassMap::new(images))
}
