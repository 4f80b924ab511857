//! Finite directed multigraphs.
//!
//! Vertices are `0..n` in a fixed order; the order is part of a graph's
//! identity because every matrix invariant depends on it. Edges are stored in
//! a vector and an edge's id is its position there. Loops and parallel edges
//! are allowed.

mod format;
mod iso;
mod report;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::IntMatrix;

pub use format::{parse_graph, ParseError};
pub use iso::{canonical_form, find_isomorphism, is_isomorphic, CanonicalForm, MAX_ISO_VERTICES};
pub use report::{classify_graph, GraphReport};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("edge {edge} has endpoint {vertex} but the graph has {n} vertices")]
    BadEndpoint { edge: EdgeId, vertex: VertexId, n: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("incidence matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("incidence matrix entry ({row}, {col}) = {value} is not a small non-negative integer")]
    BadEntry { row: usize, col: usize, value: String },
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    NoSuchVertex { vertex: VertexId, n: usize },
    #[error("{n} vertices exceed the isomorphism limit of {limit}")]
    TooLargeForIsomorphism { n: usize, limit: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

impl MultiGraph {
    /// Graph on `n` vertices labelled `v0, v1, …`.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        Self::with_labels((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (id, e) in edges.iter().enumerate() {
            for v in [e.source, e.target] {
                if v >= n {
                    return Err(GraphError::BadEndpoint { edge: id, vertex: v, n });
                }
            }
        }
        Ok(MultiGraph { labels, edges })
    }

    /// Convenience constructor from `(source, target)` pairs.
    pub fn from_edges(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::new(n, pairs.iter().map(|&(source, target)| Edge { source, target }).collect())
    }

    /// The graph `E_A`: `A[i][j]` parallel edges `i → j`, in row-major order.
    pub fn from_matrix(a: &IntMatrix) -> Result<Self, GraphError> {
        if !a.is_square() {
            return Err(GraphError::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let bad = || GraphError::BadEntry { row: i, col: j, value: a[(i, j)].to_string() };
                let k = a[(i, j)].to_u32().ok_or_else(bad)?;
                edges.extend(std::iter::repeat_n(Edge { source: i, target: j }, k as usize));
            }
        }
        Self::new(n, edges)
    }

    /// Shorthand for literals: `from_rows(&[[1, 1], [1, 1]])`.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, GraphError> {
        Self::from_matrix(&IntMatrix::from_rows(rows))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex { vertex: v, n: self.vertex_count() })
        }
    }

    /// `s⁻¹(v)` in edge-id order.
    pub fn out_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.edges[e].source == v).collect()
    }

    /// `r⁻¹(v)` in edge-id order.
    pub fn in_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.edges[e].target == v).collect()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.source == v).count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.target == v).count()
    }

    fn edge_ids(&self) -> std::ops::Range<EdgeId> {
        0..self.edges.len()
    }

    /// Out-neighbour lists with multiplicity.
    pub fn successors(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }

    /// `A_E`: entry `(i, j)` counts edges `i → j`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for e in &self.edges {
            a[(e.source, e.target)] += 1;
        }
        a
    }

    /// `I − Aᵗ`; its cokernel on column vectors is the Grothendieck group,
    /// with vertex `v` the class of the unit vector `e_v`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::identity(n);
        for e in &self.edges {
            m[(e.target, e.source)] -= 1;
        }
        m
    }

    /// Multiplicity of `i → j` as a machine integer.
    pub fn multiplicity(&self, i: VertexId, j: VertexId) -> usize {
        self.edges.iter().filter(|e| e.source == i && e.target == j).count()
    }

    /// Same vertices, every edge reversed; edge ids are preserved.
    pub fn transpose(&self) -> MultiGraph {
        MultiGraph {
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|e| Edge { source: e.target, target: e.source }).collect(),
        }
    }

    /// Vertices with no incoming edges.
    pub fn sources(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.in_degree(v) == 0).collect()
    }

    /// Vertices with no outgoing edges.
    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.out_degree(v) == 0).collect()
    }

    /// Edges reordered by `(source, target)` with fresh ids; labels kept.
    pub fn normalized(&self) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.sort();
        MultiGraph { labels: self.labels.clone(), edges }
    }

    /// Equal vertex order and incidence matrix, ignoring labels and edge ids.
    pub fn same_matrix(&self, other: &MultiGraph) -> bool {
        self.vertex_count() == other.vertex_count() && self.normalized().edges == other.normalized().edges
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[VertexId]) -> MultiGraph {
        assert_eq!(perm.len(), self.vertex_count(), "permutation length must match vertex count");
        let mut labels = vec![String::new(); perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        let edges = self.edges.iter().map(|e| Edge { source: perm[e.source], target: perm[e.target] }).collect();
        MultiGraph { labels, edges }
    }

    pub fn with_relabelled(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.labels.len() {
            return Err(GraphError::LabelCount { expected: self.labels.len(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Strongly connected components (Tarjan), each sorted, listed in order
    /// of their least vertex.
    pub fn strongly_connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut comps = tarjan(&self.successors());
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }

    /// Vertices lying on some cycle (including loops).
    pub fn cycle_vertices(&self) -> Vec<VertexId> {
        let mut on_cycle = vec![false; self.vertex_count()];
        for comp in self.strongly_connected_components() {
            let cyclic = comp.len() > 1 || self.multiplicity(comp[0], comp[0]) > 0;
            if cyclic {
                for v in comp {
                    on_cycle[v] = true;
                }
            }
        }
        self.vertices().filter(|&v| on_cycle[v]).collect()
    }

    /// Vertices reachable from `v` by a path of length ≥ 0.
    pub fn reachable_from(&self, v: VertexId) -> Vec<bool> {
        let adj = self.successors();
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Multiplicity table keyed by `(source, target)`.
    pub fn multiplicities(&self) -> BTreeMap<(VertexId, VertexId), usize> {
        let mut m = BTreeMap::new();
        for e in &self.edges {
            *m.entry((e.source, e.target)).or_insert(0) += 1;
        }
        m
    }

    pub fn has_large_entries(&self, cap: usize) -> bool {
        self.multiplicities().values().any(|&k| k > cap)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.incidence_matrix().entries().iter().all(Zero::is_zero)
    }
}

/// Iterative Tarjan SCC over adjacency lists.
fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph[{}] ", self.labels.join(","))?;
        let rows: Vec<String> = (0..self.vertex_count())
            .map(|i| {
                let r: Vec<String> = (0..self.vertex_count()).map(|j| self.multiplicity(i, j).to_string()).collect();
                format!("[{}]", r.join(" "))
            })
            .collect();
        write!(f, "{}", rows.join(""))
    }
}

/// The graph text format's `matrix` block.
impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matrix {}", self.vertex_count())?;
        write!(f, "{}", self.incidence_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(k: usize) -> MultiGraph {
        MultiGraph::from_edges(1, &vec![(0, 0); k]).unwrap()
    }

    #[test]
    fn incidence_of_rose() {
        assert_eq!(rose(4).incidence_matrix(), IntMatrix::from_rows(&[[4]]));
        assert_eq!(MultiGraph::new(1, vec![]).unwrap().incidence_matrix(), IntMatrix::from_rows(&[[0]]));
    }

    #[test]
    fn incidence_of_two_graph() {
        let g = MultiGraph::from_rows(&[[1, 1], [1, 1]]).unwrap();
        assert_eq!(g.incidence_matrix(), IntMatrix::from_rows(&[[1, 1], [1, 1]]));
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn transpose_example() {
        let g = MultiGraph::from_rows(&[[1, 1, 1], [0, 0, 1], [1, 0, 0]]).unwrap();
        assert_eq!(g.transpose().incidence_matrix(), IntMatrix::from_rows(&[[1, 0, 1], [1, 0, 0], [1, 1, 0]]));
        assert_eq!(rose(1).transpose(), rose(1));
        assert_eq!(g.transpose().transpose(), g);
    }

    #[test]
    fn sources_and_sinks() {
        let line = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(line.sources(), vec![0]);
        assert_eq!(line.sinks(), vec![2]);
        assert!(rose(4).sources().is_empty() && rose(4).sinks().is_empty());
        // a source feeding a 2-cycle
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(g.sources(), vec![0]);
        assert!(g.sinks().is_empty());
    }

    #[test]
    fn rejects_empty_and_dangling() {
        assert_eq!(MultiGraph::new(0, vec![]), Err(GraphError::Empty));
        assert!(matches!(MultiGraph::from_edges(2, &[(0, 2)]), Err(GraphError::BadEndpoint { .. })));
        let neg = IntMatrix::from_rows(&[[-1]]);
        assert!(matches!(MultiGraph::from_matrix(&neg), Err(GraphError::BadEntry { .. })));
    }

    #[test]
    fn components_and_cycles() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 0), (1, 2), (3, 3)]).unwrap();
        assert_eq!(g.strongly_connected_components(), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(g.cycle_vertices(), vec![0, 1, 3]);
    }

    #[test]
    fn permute_conjugates_matrix() {
        let g = MultiGraph::from_rows(&[[0, 2], [1, 0]]).unwrap();
        let p = g.permute(&[1, 0]);
        assert_eq!(p.incidence_matrix(), IntMatrix::from_rows(&[[0, 1], [2, 0]]));
    }
}
