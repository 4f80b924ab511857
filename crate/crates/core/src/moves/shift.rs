use crate::graph::{Edge, MultiGraph, VertexId};
use crate::moves::MoveError;

/// `E(w ↪ v)`: for each out-edge of `w`, drop one parallel out-edge of `v`
/// (the earliest unused one) and add a single edge `v → w` at the end.
/// Row `v` of the matrix becomes `A(v,·) − A(w,·) + e_w`.
pub fn shift(g: &MultiGraph, v: VertexId, w: VertexId) -> Result<MultiGraph, MoveError> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w {
        return Err(MoveError::ShiftPrecondition("the two vertices coincide".into()));
    }
    for x in [v, w] {
        if g.out_degree(x) == 0 {
            return Err(MoveError::ShiftPrecondition(format!("vertex {x} is a sink")));
        }
    }
    for j in g.vertices() {
        let (have, need) = (g.multiplicity(v, j), g.multiplicity(w, j));
        if have < need {
            return Err(MoveError::ShiftPrecondition(format!(
                "column {j}: vertex {v} has {have} edges there but {w} has {need}"
            )));
        }
    }
    let mut drop = vec![false; g.edge_count()];
    let v_out = g.out_edges(v);
    for e in g.out_edges(w) {
        let target = g.edge(e).target;
        let theta = v_out
            .iter()
            .copied()
            .find(|&f| !drop[f] && g.edge(f).target == target)
            .expect("multiplicities checked above");
        drop[theta] = true;
    }
    let mut edges: Vec<Edge> = g.edges().iter().enumerate().filter(|&(id, _)| !drop[id]).map(|(_, e)| *e).collect();
    edges.push(Edge { source: v, target: w });
    Ok(MultiGraph::with_labels(g.labels().to_vec(), edges)?)
}

/// All `(v, w)` on which [`shift`] applies.
pub fn shiftable_pairs(g: &MultiGraph) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for v in g.vertices() {
        for w in g.vertices() {
            if v != w
                && g.out_degree(v) > 0
                && g.out_degree(w) > 0
                && g.vertices().all(|j| g.multiplicity(v, j) >= g.multiplicity(w, j))
            {
                out.push((v, w));
            }
        }
    }
    out
}
