use serde::Serialize;

use crate::graph::{MultiGraph, VertexId};

/// Structural predicates that the simplicity and flow-equivalence results
/// are phrased in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub has_sources: bool,
    pub has_sinks: bool,
    pub irreducible: bool,
    pub essential: bool,
    pub trivial: bool,
    pub every_cycle_has_exit: bool,
    pub every_vertex_reaches_cycle_or_sink: bool,
    pub simple_lpa: bool,
    pub purely_infinite_simple: bool,
    /// Lexicographically least cycle without an exit, as a vertex list
    /// starting at its least vertex.
    pub exitless_cycle: Option<Vec<VertexId>>,
}

pub fn classify_graph(g: &MultiGraph) -> GraphReport {
    let has_sources = !g.sources().is_empty();
    let has_sinks = !g.sinks().is_empty();
    let comps = g.strongly_connected_components();
    let irreducible = comps.len() == 1;
    let essential = !has_sources && !has_sinks;
    let trivial = irreducible && g.vertices().all(|v| g.out_degree(v) == 1 && g.in_degree(v) == 1);
    let exitless_cycle = exitless_cycle(g);
    let every_cycle_has_exit = exitless_cycle.is_none();
    let every_vertex_reaches_cycle_or_sink = cofinal(g);
    let simple_lpa = every_cycle_has_exit && every_vertex_reaches_cycle_or_sink;
    let has_cycle = !g.cycle_vertices().is_empty();
    GraphReport {
        has_sources,
        has_sinks,
        irreducible,
        essential,
        trivial,
        every_cycle_has_exit,
        every_vertex_reaches_cycle_or_sink,
        simple_lpa,
        purely_infinite_simple: simple_lpa && has_cycle,
        exitless_cycle,
    }
}

/// A cycle has no exit iff each of its vertices emits exactly one edge, so
/// it suffices to look for cycles in the functional graph on out-degree-1
/// vertices.
fn exitless_cycle(g: &MultiGraph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut next = vec![None; n];
    for e in g.edges() {
        if g.out_degree(e.source) == 1 {
            next[e.source] = Some(e.target);
        }
    }
    // 0 = unvisited, 1 = on current walk, 2 = done
    let mut state = vec![0u8; n];
    let mut best: Option<Vec<VertexId>> = None;
    for start in 0..n {
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            if state[v] == 2 {
                break;
            }
            if state[v] == 1 {
                let pos = walk.iter().position(|&w| w == v).expect("vertex on current walk");
                let mut cycle: Vec<VertexId> = walk[pos..].to_vec();
                let min_at = cycle.iter().enumerate().min_by_key(|(_, &w)| w).map(|(i, _)| i).unwrap_or(0);
                cycle.rotate_left(min_at);
                if best.as_ref().is_none_or(|b| cycle < *b) {
                    best = Some(cycle);
                }
                break;
            }
            state[v] = 1;
            walk.push(v);
            match next[v] {
                Some(w) => v = w,
                None => break,
            }
        }
        for w in walk {
            state[w] = 2;
        }
    }
    best
}

/// Every vertex has a path to every cycle and to every sink.
fn cofinal(g: &MultiGraph) -> bool {
    let sinks = g.sinks();
    let cyclic_components: Vec<Vec<VertexId>> = g
        .strongly_connected_components()
        .into_iter()
        .filter(|c| c.len() > 1 || g.multiplicity(c[0], c[0]) > 0)
        .collect();
    g.vertices().all(|v| {
        let reach = g.reachable_from(v);
        sinks.iter().all(|&s| reach[s]) && cyclic_components.iter().all(|c| reach[c[0]])
    })
}
