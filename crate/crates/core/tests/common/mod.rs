#![allow(dead_code)]

use lpa_flow::exactla::group_iso;
use lpa_flow::graph::{classify_graph, MultiGraph};
use lpa_flow::invariants::franks_triple;
use proptest::prelude::*;

/// Square matrices on `1..=max_n` vertices, entries in `0..=max_entry`
/// with zero over-represented.
pub fn graphs(max_n: usize, max_entry: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let entry = prop_oneof![2 => Just(0usize), 3 => 0..=max_entry];
        proptest::collection::vec(entry, n * n).prop_map(move |xs| {
            let rows: Vec<Vec<i64>> = xs.chunks(n).map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            MultiGraph::from_rows(&rows).unwrap()
        })
    })
}

pub fn pis_no_source(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    graphs(max_n, 2).prop_filter("purely infinite simple without sources", |g| {
        let r = classify_graph(g);
        r.purely_infinite_simple && !r.has_sources
    })
}

pub fn pis_essential(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    graphs(max_n, 2).prop_filter("purely infinite simple and essential", |g| {
        let r = classify_graph(g);
        r.purely_infinite_simple && r.essential
    })
}

/// Isomorphic cokernels and equal determinants.
pub fn same_det_pair(g: &MultiGraph, h: &MultiGraph) -> bool {
    let (a, b) = (franks_triple(g), franks_triple(h));
    group_iso(a.group(), b.group()) && a.determinant() == b.determinant()
}

/// Isomorphic cokernels.
pub fn same_group(g: &MultiGraph, h: &MultiGraph) -> bool {
    group_iso(franks_triple(g).group(), franks_triple(h).group())
}

/// The flags that standard moves preserve.
pub fn keepcond(g: &MultiGraph) -> (bool, bool, bool) {
    let r = classify_graph(g);
    (r.essential, r.irreducible, !r.trivial)
}
