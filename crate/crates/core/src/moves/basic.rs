use crate::graph::{Edge, MultiGraph, VertexId};
use crate::moves::{MoveError, VertexClassMap};

/// `E \ v`: drop a source and its out-edges. Later vertices shift down by one.
pub fn eliminate_source(g: &MultiGraph, v: VertexId) -> Result<MultiGraph, MoveError> {
    g.check_vertex(v)?;
    if g.vertex_count() < 2 {
        return Err(MoveError::SingletonGraph);
    }
    if g.in_degree(v) != 0 {
        return Err(MoveError::NotASource(v));
    }
    let relabel = |w: VertexId| if w > v { w - 1 } else { w };
    let labels = g.vertices().filter(|&w| w != v).map(|w| g.label(w).to_string()).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|e| e.source != v)
        .map(|e| Edge { source: relabel(e.source), target: relabel(e.target) })
        .collect();
    Ok(MultiGraph::with_labels(labels, edges)?)
}

/// The map `w ↦ w` from the eliminated graph back into `g`.
pub fn eliminate_source_class_map(g: &MultiGraph, v: VertexId) -> VertexClassMap {
    let n = g.vertex_count();
    VertexClassMap::new(g.vertices().filter(|&w| w != v).map(|w| unit(n, w)).collect())
}

/// `E_v`: a new vertex `v*` (appended last) takes over every edge leaving
/// `v`, and a new edge `f: v → v*` (appended last) joins them.
pub fn expand(g: &MultiGraph, v: VertexId) -> Result<MultiGraph, MoveError> {
    g.check_vertex(v)?;
    let star = g.vertex_count();
    let mut labels = g.labels().to_vec();
    labels.push(format!("{}*", g.label(v)));
    let mut edges: Vec<Edge> =
        g.edges().iter().map(|e| if e.source == v { Edge { source: star, target: e.target } } else { *e }).collect();
    edges.push(Edge { source: v, target: star });
    Ok(MultiGraph::with_labels(labels, edges)?)
}

/// The map `w ↦ w` from `g` into its expansion.
pub fn expand_class_map(g: &MultiGraph) -> VertexClassMap {
    let n = g.vertex_count() + 1;
    VertexClassMap::new(g.vertices().map(|w| unit(n, w)).collect())
}

/// Inverse of [`expand`]: `v`'s only out-edge must go to `v*` and be
/// `v*`'s only in-edge. `v*` is removed and its out-edges move back to `v`.
pub fn contract(g: &MultiGraph, v: VertexId, star: VertexId) -> Result<MultiGraph, MoveError> {
    g.check_vertex(v)?;
    g.check_vertex(star)?;
    let fail = |reason: &str| Err(MoveError::ContractPattern { v, star, reason: reason.to_string() });
    if v == star {
        return fail("the two vertices coincide");
    }
    let outs = g.out_edges(v);
    if outs.len() != 1 {
        return fail(&format!("{} has {} out-edges, expected exactly 1", v, outs.len()));
    }
    let f = outs[0];
    if g.edge(f).target != star {
        return fail(&format!("the out-edge of {v} does not end at {star}"));
    }
    if g.in_edges(star) != vec![f] {
        return fail(&format!("{star} must have the edge {v} → {star} as its only in-edge"));
    }
    let relabel = |w: VertexId| {
        let w = if w == star { v } else { w };
        if w > star {
            w - 1
        } else {
            w
        }
    };
    let labels = g.vertices().filter(|&w| w != star).map(|w| g.label(w).to_string()).collect();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(id, _)| id != f)
        .map(|(_, e)| Edge { source: relabel(e.source), target: relabel(e.target) })
        .collect();
    Ok(MultiGraph::with_labels(labels, edges)?)
}

/// All `(v, v*)` pairs on which [`contract`] applies.
pub fn contractible_pairs(g: &MultiGraph) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let outs = g.out_edges(v);
        if outs.len() != 1 {
            continue;
        }
        let star = g.edge(outs[0]).target;
        if star != v && g.in_degree(star) == 1 {
            out.push((v, star));
        }
    }
    out
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use crate::IntMatrix;

    #[test]
    fn eliminating_the_source_of_a_cycle() {
        // v feeds a 2-cycle
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 1)]).unwrap();
        let h = eliminate_source(&g, 0).unwrap();
        assert_eq!(h.incidence_matrix(), IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(h.labels(), &["v1", "v2"]);
    }

    #[test]
    fn eliminating_from_a_line() {
        let g = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let h = eliminate_source(&g, 0).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn elimination_preconditions() {
        let g = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(eliminate_source(&g, 1), Err(MoveError::NotASource(1)));
        let single = MultiGraph::new(1, vec![]).unwrap();
        assert_eq!(eliminate_source(&single, 0), Err(MoveError::SingletonGraph));
    }

    #[test]
    fn expansion_example() {
        // v has a loop and an edge to a; a → b → v
        let g = MultiGraph::from_edges(3, &[(0, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        let h = expand(&g, 0).unwrap();
        // v ⇄ v*, v* → a, a → b → v
        let expected = IntMatrix::from_rows(&[[0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0], [1, 1, 0, 0]]);
        assert_eq!(h.incidence_matrix(), expected);
    }

    #[test]
    fn expanding_an_isolated_vertex_gives_a_line() {
        let h = expand(&MultiGraph::new(1, vec![]).unwrap(), 0).unwrap();
        assert_eq!(h.incidence_matrix(), IntMatrix::from_rows(&[[0, 1], [0, 0]]));
        assert_eq!(h.labels(), &["v0", "v0*"]);
        let back = contract(&h, 0, 1).unwrap();
        assert_eq!(back, MultiGraph::new(1, vec![]).unwrap());
    }

    #[test]
    fn contract_round_trip() {
        let g = MultiGraph::from_rows(&[[1, 2, 0], [0, 1, 1], [3, 0, 0]]).unwrap();
        for v in g.vertices() {
            let h = expand(&g, v).unwrap();
            assert!(contractible_pairs(&h).contains(&(v, 3)));
            let back = contract(&h, v, 3).unwrap();
            assert_eq!(back, g);
            assert!(is_isomorphic(&back, &g).unwrap());
        }
    }

    #[test]
    fn contract_rejects_wrong_pattern() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (0, 2), (1, 0), (2, 0)]).unwrap();
        assert!(matches!(contract(&g, 0, 1), Err(MoveError::ContractPattern { .. })));
        assert!(matches!(contract(&g, 1, 1), Err(MoveError::ContractPattern { .. })));
        // v* with a second in-edge
        let h = MultiGraph::from_edges(3, &[(0, 1), (2, 1), (1, 0), (1, 2)]).unwrap();
        let err = contract(&h, 0, 1).unwrap_err();
        assert!(err.to_string().contains("only in-edge"), "{err}");
    }
}
