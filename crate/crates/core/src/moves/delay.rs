//! Drinen out- and in-delays.
//!
//! Original vertices keep their indices (as `v⁰` / `v₀`); delay vertices
//! `v¹..v^{d(v)}` are appended afterwards, grouped by vertex, with labels
//! `"label^i"` / `"label_i"`.

use crate::graph::{Edge, MultiGraph, VertexId};
use crate::moves::{MoveError, Partition, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DelayKind {
    /// `d_s`, delaying edges at their sources.
    Source,
    /// `d_r`, delaying edges at their ranges.
    Range,
}

/// Finite delay values on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DrinenVector {
    kind: DelayKind,
    vertex: Vec<u64>,
    edge: Vec<u64>,
}

impl DrinenVector {
    /// Checks that each vertex with edges on the relevant side carries the
    /// maximum of its edges' values. Vertices without such edges are free.
    pub fn new(g: &MultiGraph, kind: DelayKind, vertex: Vec<u64>, edge: Vec<u64>) -> Result<Self, MoveError> {
        if vertex.len() != g.vertex_count() || edge.len() != g.edge_count() {
            return Err(MoveError::BadDelay(format!(
                "expected {} vertex and {} edge values, got {} and {}",
                g.vertex_count(),
                g.edge_count(),
                vertex.len(),
                edge.len()
            )));
        }
        for w in g.vertices() {
            let es = match kind {
                DelayKind::Source => g.out_edges(w),
                DelayKind::Range => g.in_edges(w),
            };
            if let Some(max) = es.iter().map(|&e| edge[e]).max() {
                if vertex[w] != max {
                    return Err(MoveError::BadDelay(format!(
                        "vertex {w} has delay {} but the maximum over its edges is {max}",
                        vertex[w]
                    )));
                }
            }
        }
        Ok(DrinenVector { kind, vertex, edge })
    }

    /// Vertex values derived as maxima; vertices without edges get 0.
    pub fn from_edge_values(g: &MultiGraph, kind: DelayKind, edge: Vec<u64>) -> Result<Self, MoveError> {
        if edge.len() != g.edge_count() {
            return Err(MoveError::BadDelay(format!("{} edge values for {} edges", edge.len(), g.edge_count())));
        }
        let mut vertex = vec![0; g.vertex_count()];
        for (id, e) in g.edges().iter().enumerate() {
            let w = if kind == DelayKind::Source { e.source } else { e.target };
            vertex[w] = vertex[w].max(edge[id]);
        }
        Self::new(g, kind, vertex, edge)
    }

    pub fn zero(g: &MultiGraph, kind: DelayKind) -> Self {
        DrinenVector { kind, vertex: vec![0; g.vertex_count()], edge: vec![0; g.edge_count()] }
    }

    /// `d_{r,𝓟}`: `m(v) − 1` at each vertex with classes, and one less than
    /// the class index on each edge.
    pub fn for_in_split(g: &MultiGraph, p: &Partition) -> Result<Self, MoveError> {
        if p.side() != Side::In {
            return Err(MoveError::MalformedPartition("expected a partition of in-edges".into()));
        }
        let edge = (0..g.edge_count()).map(|e| p.class_of(g, e) as u64 - 1).collect();
        let vertex = g.vertices().map(|v| p.class_count(v).saturating_sub(1) as u64).collect();
        Self::new(g, DelayKind::Range, vertex, edge)
    }

    pub fn kind(&self) -> DelayKind {
        self.kind
    }

    pub fn vertex_values(&self) -> &[u64] {
        &self.vertex
    }

    pub fn edge_values(&self) -> &[u64] {
        &self.edge
    }

    /// The same values read as the other kind, for use on the transpose.
    pub fn transposed(&self) -> Self {
        let kind = match self.kind {
            DelayKind::Source => DelayKind::Range,
            DelayKind::Range => DelayKind::Source,
        };
        DrinenVector { kind, ..self.clone() }
    }

    fn check_for(&self, g: &MultiGraph, kind: DelayKind) -> Result<(), MoveError> {
        if self.kind != kind {
            return Err(MoveError::BadDelay(format!("expected a {kind:?} vector, got {:?}", self.kind)));
        }
        Self::new(g, kind, self.vertex.clone(), self.edge.clone()).map(|_| ())
    }
}

/// Index of `v^i` in the delayed graph, and the label list.
fn delay_layout(g: &MultiGraph, d: &DrinenVector, mark: char) -> (impl Fn(VertexId, u64) -> VertexId, Vec<String>) {
    let n = g.vertex_count();
    let mut offset = Vec::with_capacity(n);
    let mut labels = g.labels().to_vec();
    let mut next = n;
    for v in g.vertices() {
        offset.push(next);
        for i in 1..=d.vertex[v] {
            labels.push(format!("{}{mark}{i}", g.label(v)));
        }
        next += d.vertex[v] as usize;
    }
    let index = move |v: VertexId, i: u64| if i == 0 { v } else { offset[v] + i as usize - 1 };
    (index, labels)
}

/// `d_s(E)`: edge `e` leaves `s(e)^{d(e)}` and enters `r(e)⁰`; chains
/// `v^{i−1} → v^i`.
pub fn out_delay(g: &MultiGraph, d: &DrinenVector) -> Result<MultiGraph, MoveError> {
    d.check_for(g, DelayKind::Source)?;
    let (at, labels) = delay_layout(g, d, '^');
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| Edge { source: at(e.source, d.edge[id]), target: e.target })
        .collect();
    for v in g.vertices() {
        for i in 1..=d.vertex[v] {
            edges.push(Edge { source: at(v, i - 1), target: at(v, i) });
        }
    }
    Ok(MultiGraph::with_labels(labels, edges)?)
}

/// `d_r(E)`: edge `e` leaves `s(e)₀` and enters `r(e)_{d(e)}`; chains
/// `v_i → v_{i−1}`.
pub fn in_delay(g: &MultiGraph, d: &DrinenVector) -> Result<MultiGraph, MoveError> {
    d.check_for(g, DelayKind::Range)?;
    let (at, labels) = delay_layout(g, d, '_');
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| Edge { source: e.source, target: at(e.target, d.edge[id]) })
        .collect();
    for v in g.vertices() {
        for i in 1..=d.vertex[v] {
            edges.push(Edge { source: at(v, i), target: at(v, i - 1) });
        }
    }
    Ok(MultiGraph::with_labels(labels, edges)?)
}
