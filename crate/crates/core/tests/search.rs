mod common;

use lpa_flow::flowsearch::{find_sequence, SearchError, SearchLimits};
use lpa_flow::graph::MultiGraph;
use lpa_flow::random;
use lpa_flow::script::parse_script;

#[test]
fn scrambled_graphs_are_recovered() {
    let mut r = random::rng(random::DEFAULT_SEED);
    let limits = SearchLimits::default();
    for _ in 0..8 {
        let g = random::pis_essential(&mut r, 3, 2);
        let (_, h) = random::scramble(&mut r, &g, 3, limits.max_vertices);
        let seq = find_sequence(&h, &g, &limits).unwrap_or_else(|e| panic!("{}: {e}", h.to_text()));
        assert!(seq.reaches(&g));
        assert!(seq.steps.len() <= limits.max_depth);
        for step in &seq.steps {
            assert!(step.mv.is_standard());
            assert!(common::same_det_pair(&h, &step.graph));
        }
        // the printed script replays to the same graphs
        let moves = parse_script(&seq.to_script()).unwrap();
        let mut current = h.clone();
        for ((_, mv), step) in moves.iter().zip(&seq.steps) {
            current = mv.apply(&current).unwrap();
            assert_eq!(current, step.graph);
        }
    }
}

#[test]
fn search_is_deterministic() {
    let e = MultiGraph::from_rows(&[[4]]).unwrap();
    let f = MultiGraph::from_rows(&[[1, 1], [3, 2]]).unwrap();
    let limits = SearchLimits::default();
    let a = find_sequence(&e, &f, &limits).unwrap();
    let b = find_sequence(&e, &f, &limits).unwrap();
    assert_eq!(a, b);
    assert!(a.reaches(&f));
}

#[test]
fn mismatch_is_reported_apart_from_exhaustion() {
    let two = MultiGraph::from_rows(&[[1, 1], [1, 1]]).unwrap();
    let two_minus = lpa_flow::moves::minus(&two).unwrap();
    assert!(matches!(
        find_sequence(&two, &two_minus, &SearchLimits::default()),
        Err(SearchError::InvariantMismatch(_))
    ));
    let tight = SearchLimits { max_depth: 0, ..SearchLimits::default() };
    let e = MultiGraph::from_rows(&[[1, 2], [1, 1]]).unwrap();
    let f = lpa_flow::moves::expand(&e, 0).unwrap();
    assert!(matches!(find_sequence(&e, &f, &tight), Err(SearchError::NotFoundWithinBounds { .. })));
}

#[test]
fn vertex_bound_above_the_isomorphism_limit_is_refused() {
    let e = MultiGraph::from_rows(&[[2]]).unwrap();
    let limits = SearchLimits { max_vertices: 9, ..SearchLimits::default() };
    assert!(matches!(find_sequence(&e, &e, &limits), Err(SearchError::Hypothesis(_))));
}
