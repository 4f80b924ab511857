//! In- and out-splitting and their verified inverses.
//!
//! Split vertices are numbered grouped by original vertex: `v₁..v_{m(v)}`
//! for every `v` in order, or `v` itself when `m(v) = 0`. Labels become
//! `"label#i"`.

use num_bigint::BigInt;

use crate::graph::{Edge, MultiGraph, VertexId};
use crate::moves::{MoveError, Partition, Side, VertexClassMap};
use crate::IntMatrix;

/// `A_E = R·S` and `A_split = S·R`.
///
/// Columns of `R` (rows of `S`) follow the split-vertex order. A source
/// `v` of an in-split has no classes; it keeps a column of its own whose
/// `S` row is the indicator of `v` and whose `R` column is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFactorization {
    pub r: IntMatrix,
    pub s: IntMatrix,
}

impl SplitFactorization {
    pub fn check(&self, original: &MultiGraph, split: &MultiGraph) -> bool {
        &self.r * &self.s == original.incidence_matrix() && &self.s * &self.r == split.incidence_matrix()
    }
}

/// First split-vertex index of each original vertex, plus the total count.
fn split_offsets(p: &Partition, n: usize) -> (Vec<usize>, usize) {
    let mut base = Vec::with_capacity(n);
    let mut next = 0;
    for v in 0..n {
        base.push(next);
        next += p.class_count(v).max(1);
    }
    (base, next)
}

fn split_labels(g: &MultiGraph, p: &Partition) -> Vec<String> {
    let mut labels = Vec::new();
    for v in g.vertices() {
        match p.class_count(v) {
            0 => labels.push(g.label(v).to_string()),
            m => labels.extend((1..=m).map(|i| format!("{}#{i}", g.label(v)))),
        }
    }
    labels
}

fn expect_side(p: &Partition, side: Side) -> Result<(), MoveError> {
    if p.side() != side {
        return Err(MoveError::MalformedPartition(format!("expected a partition of {side:?}-edges")));
    }
    Ok(())
}

/// `E_r(𝓟)`: every edge `e` is copied once per class of `s(e)`; copy `j`
/// leaves `s(e)_j` and enters `r(e)_i` where `e` lies in class `i`.
pub fn in_split(g: &MultiGraph, p: &Partition) -> Result<(MultiGraph, SplitFactorization, VertexClassMap), MoveError> {
    expect_side(p, Side::In)?;
    let n = g.vertex_count();
    let (base, total) = split_offsets(p, n);
    let mut edges = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let target = base[e.target] + p.class_of(g, id) - 1;
        for j in 0..p.class_count(e.source).max(1) {
            edges.push(Edge { source: base[e.source] + j, target });
        }
    }
    let split = MultiGraph::with_labels(split_labels(g, p), edges)?;

    let mut r = IntMatrix::zeros(n, total);
    let mut s = IntMatrix::zeros(total, n);
    for v in g.vertices() {
        for k in 0..p.class_count(v).max(1) {
            s[(base[v] + k, v)] = BigInt::from(1);
        }
        for (k, class) in p.classes(v).iter().enumerate() {
            for &e in class {
                r[(g.edge(e).source, base[v] + k)] += 1;
            }
        }
    }
    let map = VertexClassMap::new(g.vertices().map(|v| super::basic::unit(total, base[v])).collect());
    Ok((split, SplitFactorization { r, s }, map))
}

/// `E_s(𝓟)`: an edge `e` in class `i` at `s(e)` is copied once per class
/// of `r(e)`; copy `j` leaves `s(e)^i` and enters `r(e)^j`.
pub fn out_split(g: &MultiGraph, p: &Partition) -> Result<(MultiGraph, VertexClassMap), MoveError> {
    expect_side(p, Side::Out)?;
    let n = g.vertex_count();
    let (base, total) = split_offsets(p, n);
    let mut edges = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let source = base[e.source] + p.class_of(g, id) - 1;
        for j in 0..p.class_count(e.target).max(1) {
            edges.push(Edge { source, target: base[e.target] + j });
        }
    }
    let split = MultiGraph::with_labels(split_labels(g, p), edges)?;
    let map = VertexClassMap::new(
        g.vertices()
            .map(|v| {
                let mut x = vec![0; total];
                for k in 0..p.class_count(v).max(1) {
                    x[base[v] + k] = 1;
                }
                x
            })
            .collect(),
    );
    Ok((split, map))
}

struct Blocks {
    block_of: Vec<usize>,
    position: Vec<usize>,
}

fn check_blocks(g: &MultiGraph, blocks: &[Vec<VertexId>]) -> Result<Blocks, MoveError> {
    let n = g.vertex_count();
    let mut block_of = vec![usize::MAX; n];
    let mut position = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        if members.is_empty() {
            return Err(MoveError::NotRealizable(format!("block {b} is empty")));
        }
        for (i, &v) in members.iter().enumerate() {
            g.check_vertex(v)?;
            if block_of[v] != usize::MAX {
                return Err(MoveError::NotRealizable(format!("vertex {v} appears in two blocks")));
            }
            block_of[v] = b;
            position[v] = i;
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(MoveError::NotRealizable(format!("vertex {v} is in no block")));
    }
    Ok(Blocks { block_of, position })
}

fn base_label(label: &str) -> String {
    match label.rsplit_once('#') {
        Some((head, tail)) if !tail.is_empty() && tail.bytes().all(|b| b.is_ascii_digit()) => head.to_string(),
        _ => label.to_string(),
    }
}

/// Maps each split vertex of the candidate back to the member of `blocks`
/// it should coincide with; `None` when the class counts disagree.
fn split_to_members(p: &Partition, blocks: &[Vec<VertexId>]) -> Option<Vec<VertexId>> {
    let mut perm = Vec::new();
    for (c, members) in blocks.iter().enumerate() {
        let m = p.class_count(c);
        if m.max(1) != members.len() {
            return None;
        }
        perm.extend_from_slice(members);
    }
    Some(perm)
}

/// Inverse of [`in_split`]: blocks of `g` become single vertices, and
/// position within a block becomes the class index. Block `b` becomes
/// vertex `b`. Fails unless splitting the result reproduces `g`.
pub fn in_amalgamate(g: &MultiGraph, blocks: &[Vec<VertexId>]) -> Result<MultiGraph, MoveError> {
    in_amalgamate_with_partition(g, blocks).map(|(e, _)| e)
}

/// [`in_amalgamate`] together with the recovered partition.
pub fn in_amalgamate_with_partition(
    g: &MultiGraph,
    blocks: &[Vec<VertexId>],
) -> Result<(MultiGraph, Partition), MoveError> {
    let bl = check_blocks(g, blocks)?;
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    // every member of a block has the same out-edges; read them off the first
    for (b, members) in blocks.iter().enumerate() {
        for e in g.out_edges(members[0]) {
            let y = g.edge(e).target;
            edges.push(Edge { source: b, target: bl.block_of[y] });
            classes.push(bl.position[y] + 1);
        }
    }
    let labels = blocks.iter().map(|m| base_label(g.label(m[0]))).collect();
    let quotient = MultiGraph::with_labels(labels, edges)?;
    let p = Partition::from_labels(&quotient, Side::In, &classes)
        .map_err(|e| MoveError::NotRealizable(format!("no consistent partition: {e}")))?;
    let (split, _, _) = in_split(&quotient, &p)?;
    verify_resplit(g, &split, &p, blocks)?;
    Ok((quotient, p))
}

/// Inverse of [`out_split`], built from in-edges the same way.
pub fn out_amalgamate(g: &MultiGraph, blocks: &[Vec<VertexId>]) -> Result<MultiGraph, MoveError> {
    out_amalgamate_with_partition(g, blocks).map(|(e, _)| e)
}

pub fn out_amalgamate_with_partition(
    g: &MultiGraph,
    blocks: &[Vec<VertexId>],
) -> Result<(MultiGraph, Partition), MoveError> {
    let bl = check_blocks(g, blocks)?;
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    for (b, members) in blocks.iter().enumerate() {
        for e in g.in_edges(members[0]) {
            let y = g.edge(e).source;
            edges.push(Edge { source: bl.block_of[y], target: b });
            classes.push(bl.position[y] + 1);
        }
    }
    let labels = blocks.iter().map(|m| base_label(g.label(m[0]))).collect();
    let quotient = MultiGraph::with_labels(labels, edges)?;
    let p = Partition::from_labels(&quotient, Side::Out, &classes)
        .map_err(|e| MoveError::NotRealizable(format!("no consistent partition: {e}")))?;
    let (split, _) = out_split(&quotient, &p)?;
    verify_resplit(g, &split, &p, blocks)?;
    Ok((quotient, p))
}

fn verify_resplit(
    g: &MultiGraph,
    split: &MultiGraph,
    p: &Partition,
    blocks: &[Vec<VertexId>],
) -> Result<(), MoveError> {
    let perm = split_to_members(p, blocks)
        .ok_or_else(|| MoveError::NotRealizable("block sizes do not match the recovered class counts".into()))?;
    if !split.permute(&perm).same_matrix(g) {
        return Err(MoveError::NotRealizable("block members do not share a common structure".into()));
    }
    Ok(())
}
