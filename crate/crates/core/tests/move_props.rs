mod common;

use common::{keepcond, pis_essential, pis_no_source, same_det_pair, same_group};
use lpa_flow::exactla::Answer;
use lpa_flow::graph::{classify_graph, is_isomorphic, MultiGraph};
use lpa_flow::invariants::{equiv_unitary_pair, franks_triple};
use lpa_flow::moves::{
    contract, eliminate_source, eliminate_source_class_map, expand, expand_class_map, in_amalgamate, in_delay,
    in_split, minus, minus1_at, minus1_class_map, minus_at, out_amalgamate, out_delay, out_split, shift,
    shiftable_pairs, verify_vertex_class_map, DelayKind, DrinenVector, Partition, Side,
};
use lpa_flow::random;
use proptest::prelude::*;

/// Blocks grouping the split copies of each original vertex.
fn split_blocks(p: &Partition, n: usize) -> Vec<Vec<usize>> {
    let mut next = 0;
    (0..n)
        .map(|v| {
            let m = p.class_count(v).max(1);
            let block = (next..next + m).collect();
            next += m;
            block
        })
        .collect()
}

fn pis_with_source() -> impl Strategy<Value = MultiGraph> {
    common::graphs(4, 2).prop_filter("purely infinite simple with a source", |g| {
        let r = classify_graph(g);
        r.purely_infinite_simple && r.has_sources && g.vertex_count() >= 2
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_and_contraction(g in pis_no_source(4), pick in 0usize..4) {
        let v = pick % g.vertex_count();
        let h = expand(&g, v).unwrap();
        prop_assert!(same_det_pair(&g, &h));
        prop_assert_eq!(keepcond(&g), keepcond(&h));
        prop_assert!(verify_vertex_class_map(&g, &h, &expand_class_map(&g)));
        let back = contract(&h, v, g.vertex_count()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn in_split_and_amalgamation(g in pis_no_source(4), seed in any::<u64>()) {
        let p = random::partition(&mut random::rng(seed), &g, Side::In);
        let (h, f, map) = in_split(&g, &p).unwrap();
        prop_assert!(same_det_pair(&g, &h));
        prop_assert_eq!(keepcond(&g), keepcond(&h));
        prop_assert!(f.check(&g, &h));
        prop_assert!(verify_vertex_class_map(&g, &h, &map));
        let back = in_amalgamate(&h, &split_blocks(&p, g.vertex_count())).unwrap();
        prop_assert!(is_isomorphic(&back, &g).unwrap());
        prop_assert!(same_det_pair(&h, &back));
    }

    #[test]
    fn out_split_and_amalgamation(g in pis_no_source(4), seed in any::<u64>()) {
        let p = random::partition(&mut random::rng(seed), &g, Side::Out);
        let (h, map) = out_split(&g, &p).unwrap();
        prop_assert!(same_det_pair(&g, &h));
        prop_assert_eq!(keepcond(&g), keepcond(&h));
        prop_assert!(verify_vertex_class_map(&g, &h, &map));
        let blocks = split_blocks(&p, g.vertex_count());
        let back = out_amalgamate(&h, &blocks).unwrap();
        prop_assert!(is_isomorphic(&back, &g).unwrap());
        let dual = in_amalgamate(&h.transpose(), &blocks).unwrap().transpose();
        prop_assert!(back.same_matrix(&dual));
    }

    #[test]
    fn out_split_is_the_transposed_in_split(g in pis_no_source(4), seed in any::<u64>()) {
        let p = random::partition(&mut random::rng(seed), &g, Side::Out);
        let (h, _) = out_split(&g, &p).unwrap();
        let t = g.transpose();
        let q = Partition::new(&t, Side::In, (0..g.vertex_count()).map(|v| p.classes(v).to_vec()).collect()).unwrap();
        let (k, _, _) = in_split(&t, &q).unwrap();
        // both lay split vertices out in the same order
        prop_assert!(h.same_matrix(&k.transpose()));
    }

    #[test]
    fn source_elimination(g in pis_with_source()) {
        for v in g.sources() {
            let h = eliminate_source(&g, v).unwrap();
            prop_assert!(same_det_pair(&g, &h));
            prop_assert!(verify_vertex_class_map(&h, &g, &eliminate_source_class_map(&g, v)));
        }
    }

    #[test]
    fn gadgets_negate_the_determinant(g in pis_no_source(4)) {
        let a = *g.cycle_vertices().last().unwrap();
        let (e, m, m1) = (franks_triple(&g), franks_triple(&minus_at(&g, a).unwrap()), franks_triple(&minus1_at(&g, a).unwrap()));
        prop_assert!(same_group(&g, &minus(&g).unwrap()));
        prop_assert_eq!(m.determinant(), &-e.determinant());
        prop_assert_eq!(m1.determinant(), &-e.determinant());
        prop_assert_eq!(equiv_unitary_pair(&e, &m1), Answer::Yes);
        let with_source = minus1_at(&g, a).unwrap();
        prop_assert!(verify_vertex_class_map(&with_source, &g, &minus1_class_map(&g, a).unwrap()));
        let z = with_source.vertex_count() - 1;
        prop_assert!(eliminate_source(&with_source, z).unwrap().same_matrix(&minus_at(&g, a).unwrap()));
    }

    #[test]
    fn shift_is_a_row_operation(g in common::graphs(4, 3)) {
        for (v, w) in shiftable_pairs(&g) {
            let h = shift(&g, v, w).unwrap();
            prop_assert!(same_det_pair(&g, &h));
            let (a, b) = (g.relation_matrix(), h.relation_matrix());
            // I - Aᵗ: column v changes by minus column w
            for i in g.vertices() {
                prop_assert_eq!(&b[(i, v)], &(&a[(i, v)] - &a[(i, w)]));
            }
        }
    }

    #[test]
    fn delays_preserve_the_group(g in pis_essential(4), seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let d = random::drinen_vector(&mut r, &g, DelayKind::Source, 2);
        let h = out_delay(&g, &d).unwrap();
        prop_assert!(same_group(&g, &h));
        let d = random::drinen_vector(&mut r, &g, DelayKind::Range, 2);
        let h = in_delay(&g, &d).unwrap();
        prop_assert!(same_group(&g, &h));
        let dual = out_delay(&g.transpose(), &d.transposed()).unwrap().transpose();
        prop_assert!(h.same_matrix(&dual));
    }

    #[test]
    fn in_delay_by_a_proper_partition_matches_the_in_split(g in pis_no_source(3), seed in any::<u64>()) {
        let p = random::proper_in_partition(&mut random::rng(seed), &g);
        let d = DrinenVector::for_in_split(&g, &p).unwrap();
        let delayed = in_delay(&g, &d).unwrap();
        let (split, _, _) = in_split(&g, &p).unwrap();
        prop_assert!(classify_graph(&delayed).purely_infinite_simple);
        prop_assert!(classify_graph(&split).purely_infinite_simple);
        prop_assert_eq!(equiv_unitary_pair(&franks_triple(&delayed), &franks_triple(&split)), Answer::Yes);
    }
}

#[test]
fn transpose_duality_on_the_worked_example() {
    let g = MultiGraph::from_rows(&[[1, 1], [1, 0]]).unwrap();
    let (h, _) = out_split(&g, &Partition::finest(&g, Side::Out)).unwrap();
    let t = g.transpose();
    let (k, _, _) = in_split(&t, &Partition::finest(&t, Side::In)).unwrap();
    assert!(is_isomorphic(&h, &k.transpose()).unwrap());
}

#[test]
fn zero_class_map_is_rejected() {
    let g = MultiGraph::from_rows(&[[4]]).unwrap();
    let zero = lpa_flow::moves::VertexClassMap::new(vec![vec![0]]);
    assert!(!verify_vertex_class_map(&g, &g, &zero));
}
