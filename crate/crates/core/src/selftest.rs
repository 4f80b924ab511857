//! Built-in worked examples, each checked against the library end to end.
//!
//! `lpaflow selftest` runs these and exits non-zero if any fails.

use std::fmt;

use num_bigint::BigInt;

use crate::classify::{decide, decide_transpose, Level, Reason};
use crate::exactla::{cokernel, det, group_iso, pointed_equivalent, AbelianGroup, Answer};
use crate::graph::{classify_graph, is_isomorphic, parse_graph, MultiGraph};
use crate::invariants::{equiv_det_pair, equiv_triple, equiv_unitary_pair, franks_triple};
use crate::moves::{
    eliminate_source, expand, in_amalgamate, in_delay, in_split, minus, minus1_at, out_amalgamate, out_delay,
    out_split, verify_vertex_class_map, DelayKind, DrinenVector, Partition, Side,
};
use crate::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    /// `None` on success, otherwise what went wrong.
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass  {}", self.name),
            Some(why) => write!(f, "FAIL  {}: {why}", self.name),
        }
    }
}

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn graph(rows: &[&[i64]]) -> MultiGraph {
    MultiGraph::from_rows(rows).expect("example matrices are valid")
}

fn rose4() -> MultiGraph {
    graph(&[&[4]])
}

fn partner_f() -> MultiGraph {
    graph(&[&[1, 1], &[3, 2]])
}

fn two() -> MultiGraph {
    graph(&[&[1, 1], &[1, 1]])
}

fn two_minus() -> MultiGraph {
    graph(&[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1]])
}

fn transpose_example() -> MultiGraph {
    graph(&[&[1, 1, 1], &[0, 0, 1], &[1, 0, 0]])
}

/// `v` with a loop and `v ⇄ w`.
fn split_example() -> MultiGraph {
    graph(&[&[1, 1], &[1, 0]])
}

fn matrix_is(g: &MultiGraph, rows: &[&[i64]]) -> Result<(), String> {
    let expected = IntMatrix::from_rows(rows);
    let got = g.incidence_matrix();
    ensure(got == expected, || format!("expected {expected:?}, got {got:?}"))
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

const CHECKS: &[(&str, Check)] = &[
    ("rose with four petals has matrix (4)", || {
        let g = parse_graph("edges 1\n0 0 4\n").map_err(|e| e.to_string())?;
        matrix_is(&g, &[&[4]])
    }),
    ("the graph 2 has matrix [[1,1],[1,1]]", || {
        let g = parse_graph("matrix 2\n1 1\n1 1\n").map_err(|e| e.to_string())?;
        matrix_is(&g, &[&[1, 1], &[1, 1]])
    }),
    ("transpose of the three-vertex example", || {
        matrix_is(&transpose_example().transpose(), &[&[1, 0, 1], &[1, 0, 0], &[1, 1, 0]])
    }),
    ("rose R4 is purely infinite simple", || {
        let r = classify_graph(&rose4());
        ensure(r.purely_infinite_simple && r.irreducible && !r.trivial, || format!("{r:?}"))
    }),
    ("source elimination of a source feeding a 2-cycle", || {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 0), (2, 0)]).unwrap();
        ensure(g.sources() == vec![2], || format!("sources {:?}", g.sources()))?;
        let h = eliminate_source(&g, 2).map_err(|e| e.to_string())?;
        matrix_is(&h, &[&[0, 1], &[1, 0]])
    }),
    ("eliminating the extra source of the 1-gadget gives the gadget", || {
        let g = two();
        let a = crate::moves::default_attach(&g).map_err(|e| e.to_string())?;
        let with_source = minus1_at(&g, a).map_err(|e| e.to_string())?;
        let z = with_source.vertex_count() - 1;
        let h = eliminate_source(&with_source, z).map_err(|e| e.to_string())?;
        ensure(h.same_matrix(&minus(&g).unwrap()), || "matrices differ".into())
    }),
    ("expansion at a looped vertex", || {
        let g = MultiGraph::from_edges(3, &[(0, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        let h = expand(&g, 0).map_err(|e| e.to_string())?;
        matrix_is(&h, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[1, 0, 0, 0], &[1, 1, 0, 0]])
    }),
    ("expanding an isolated vertex gives a line", || {
        let h = expand(&MultiGraph::new(1, vec![]).unwrap(), 0).map_err(|e| e.to_string())?;
        matrix_is(&h, &[&[0, 1], &[0, 0]])
    }),
    ("in-split with singleton classes, and back", || {
        let g = split_example();
        let (h, f, _) = in_split(&g, &Partition::finest(&g, Side::In)).map_err(|e| e.to_string())?;
        matrix_is(&h, &[&[1, 0, 1], &[1, 0, 1], &[0, 1, 0]])?;
        ensure(f.check(&g, &h), || "A = RS or SR = A' fails".into())?;
        let back = in_amalgamate(&h, &[vec![0, 1], vec![2]]).map_err(|e| e.to_string())?;
        ensure(back.same_matrix(&g), || "amalgamation does not restore the graph".into())
    }),
    ("out-split with singleton classes, and back", || {
        let g = split_example();
        let (h, _) = out_split(&g, &Partition::finest(&g, Side::Out)).map_err(|e| e.to_string())?;
        matrix_is(&h, &[&[1, 1, 0], &[0, 0, 1], &[1, 1, 0]])?;
        let back = out_amalgamate(&h, &[vec![0, 1], vec![2]]).map_err(|e| e.to_string())?;
        ensure(back.same_matrix(&g), || "amalgamation does not restore the graph".into())
    }),
    ("unit out-delay at one vertex is its expansion", || {
        let g = graph(&[&[1, 1, 0], &[0, 0, 2], &[1, 0, 1]]);
        for v in g.vertices() {
            let edge = (0..g.edge_count()).map(|e| u64::from(g.edge(e).source == v)).collect();
            let d = DrinenVector::from_edge_values(&g, DelayKind::Source, edge).map_err(|e| e.to_string())?;
            let h = out_delay(&g, &d).map_err(|e| e.to_string())?;
            ensure(h.same_matrix(&expand(&g, v).unwrap()), || format!("vertex {v}"))?;
        }
        Ok(())
    }),
    ("in-delay by the split vector matches the in-split's invariants", || {
        let g = split_example();
        let p = Partition::finest(&g, Side::In);
        ensure(p.is_proper(&g), || "partition should be proper".into())?;
        let d = DrinenVector::for_in_split(&g, &p).map_err(|e| e.to_string())?;
        let delayed = in_delay(&g, &d).map_err(|e| e.to_string())?;
        let (split, _, _) = in_split(&g, &p).map_err(|e| e.to_string())?;
        let (a, b) = (franks_triple(&delayed), franks_triple(&split));
        ensure(a.is_pis() && b.is_pis(), || "both should be purely infinite simple".into())?;
        ensure(equiv_triple(&a, &b) == Answer::Yes, || format!("{} vs {}", a.pointed(), b.pointed()))
    }),
    ("the gadget turns 2 into 2-", || {
        let h = minus(&two()).map_err(|e| e.to_string())?;
        matrix_is(&h, &[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1]])
    }),
    ("det(I - A^t) is -1 for 2 and +1 for 2-", || {
        let (a, b) = (det(&two().relation_matrix()).unwrap(), det(&two_minus().relation_matrix()).unwrap());
        ensure(a == int(-1) && b == int(1), || format!("got {a} and {b}"))
    }),
    ("in-split class map v -> v_1 is an isomorphism", || {
        let g = split_example();
        let (h, _, map) = in_split(&g, &Partition::finest(&g, Side::In)).map_err(|e| e.to_string())?;
        ensure(verify_vertex_class_map(&g, &h, &map), || format!("{:?}", map.images()))
    }),
    ("out-split class map v -> sum of v^i is an isomorphism", || {
        let g = split_example();
        let (h, map) = out_split(&g, &Partition::finest(&g, Side::Out)).map_err(|e| e.to_string())?;
        ensure(verify_vertex_class_map(&g, &h, &map), || format!("{:?}", map.images()))
    }),
    ("determinants of the rose and its partner", || {
        let a = det(&IntMatrix::from_rows(&[[-3]])).unwrap();
        let b = det(&IntMatrix::from_rows(&[[0, -3], [-1, -1]])).unwrap();
        let c = det(&partner_f().relation_matrix()).unwrap();
        ensure(a == int(-3) && b == int(-3) && c == int(-3), || format!("got {a}, {b}, {c}"))
    }),
    ("coker(-3) is Z/3 with 1 projecting to 1", || {
        let c = cokernel(&IntMatrix::from_rows(&[[-3]])).unwrap();
        let expected = AbelianGroup::new(vec![int(3)], 0).unwrap();
        ensure(group_iso(c.group(), &expected), || format!("{}", c.group()))?;
        let p = c.pointed(&[int(1)]).normalized();
        ensure(p.point() == [int(1)], || format!("{p}"))
    }),
    ("coker of the relation matrix of 2 is trivial", || {
        let c = cokernel(&IntMatrix::from_rows(&[[0, -1], [-1, 0]])).unwrap();
        ensure(c.group().is_trivial(), || format!("{}", c.group()))
    }),
    ("rose and partner have isomorphic groups", || {
        let (a, b) = (franks_triple(&rose4()), franks_triple(&partner_f()));
        ensure(group_iso(a.group(), b.group()), || format!("{} vs {}", a.group(), b.group()))
    }),
    ("(Z/2, 1) and (Z/2, 0) are not equivalent", || {
        let z2 = AbelianGroup::new(vec![int(2)], 0).unwrap();
        let ans = pointed_equivalent(&z2.point(vec![int(1)]), &z2.point(vec![int(0)]));
        ensure(ans == Answer::No, || format!("{ans:?}"))
    }),
    ("trivial pointed groups are equivalent", || {
        let z = crate::Group::trivial();
        let ans = pointed_equivalent(&z.point(vec![]), &z.point(vec![]));
        ensure(ans == Answer::Yes, || format!("{ans:?}"))
    }),
    ("invariants of R4 and F are (Z/3, 1, -3)", || {
        for g in [rose4(), partner_f()] {
            let t = franks_triple(&g);
            ensure(t.group().torsion() == [int(3)] && t.group().free_rank() == 0, || format!("{}", t.group()))?;
            ensure(t.unit() == [int(1)] && *t.determinant() == int(-3), || {
                format!("{} det {}", t.pointed(), t.determinant())
            })?;
        }
        Ok(())
    }),
    ("invariants of 2 and 2- are (0, 0, -1) and (0, 0, +1)", || {
        let (a, b) = (franks_triple(&two()), franks_triple(&two_minus()));
        ensure(a.group().is_trivial() && b.group().is_trivial(), || "groups should be trivial".into())?;
        ensure(*a.determinant() == int(-1) && *b.determinant() == int(1), || "determinant signs".into())
    }),
    ("invariant comparisons on the worked pairs", || {
        let (r, f) = (franks_triple(&rose4()), franks_triple(&partner_f()));
        let (t, tm) = (franks_triple(&two()), franks_triple(&two_minus()));
        let (e, et) = (franks_triple(&transpose_example()), franks_triple(&transpose_example().transpose()));
        ensure(equiv_det_pair(&r, &f), || "R4/F groups and determinants".into())?;
        ensure(!equiv_det_pair(&t, &tm), || "2/2- determinants".into())?;
        ensure(equiv_unitary_pair(&e, &et) == Answer::No, || "E/E^t unit classes".into())?;
        ensure(equiv_unitary_pair(&t, &tm) == Answer::Yes, || "2/2- unit classes".into())?;
        ensure(equiv_triple(&r, &f) == Answer::Yes, || "R4/F triple".into())?;
        ensure(equiv_triple(&t, &tm) == Answer::No, || "2/2- triple".into())
    }),
    ("R4 and F: isomorphic", || {
        let v = decide(&rose4(), &partner_f());
        ensure(v.level == Level::Isomorphic, || v.to_string())
    }),
    ("E and its transpose: Morita equivalent, not isomorphic", || {
        let e = transpose_example();
        let v = decide(&e, &e.transpose());
        ensure(v.level == Level::MoritaEquivalentNotIsomorphic, || v.to_string())?;
        let w = decide_transpose(&e);
        ensure(w.level == Level::MoritaEquivalentNotIsomorphic, || w.to_string())?;
        ensure(is_isomorphic(&e, &e.transpose()) == Ok(false), || "graphs should differ".into())
    }),
    ("2 and 2-: unknown across the determinant-sign gap", || {
        let v = decide(&two(), &two_minus());
        ensure(v.level == Level::Unknown && v.reason == Reason::DeterminantSignGap, || v.to_string())
    }),
];

pub fn run() -> Vec<CheckResult> {
    CHECKS.iter().map(|&(name, check)| CheckResult { name, failure: check().err() }).collect()
}

pub fn check_count() -> usize {
    CHECKS.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        let results = run();
        let failed: Vec<String> = results.iter().filter(|r| !r.passed()).map(ToString::to_string).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert_eq!(results.len(), check_count());
    }
}
