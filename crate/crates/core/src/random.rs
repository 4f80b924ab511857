//! Seeded generators for randomized checks: graphs, partitions, class
//! vectors and scrambled instances.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::exactla::Matrix;
use crate::graph::{classify_graph, EdgeId, MultiGraph, VertexId};
use crate::moves::{self, DelayKind, DrinenVector, Partition, Side};
use crate::script::{complete_blocks, Move};
use crate::{Int, IntMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed_2013;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Entries drawn uniformly from `lo..=hi`.
pub fn int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    let data: Vec<Int> = (0..rows * cols).map(|_| Int::from(rng.gen_range(lo..=hi))).collect();
    Matrix::from_vec(rows, cols, data).expect("dimensions match")
}

/// `n` vertices, each multiplicity drawn from `0..=max_entry`, biased
/// towards zero so that sparse graphs show up.
pub fn graph<R: Rng>(rng: &mut R, n: usize, max_entry: usize) -> MultiGraph {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..=max_entry) as i64 }).collect())
        .collect();
    MultiGraph::from_rows(&rows).expect("square and non-negative")
}

/// Rejection-samples a graph on `1..=max_n` vertices satisfying `keep`.
pub fn graph_where<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_entry: usize,
    keep: impl Fn(&MultiGraph) -> bool,
) -> MultiGraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let g = graph(rng, n, max_entry);
        if keep(&g) {
            return g;
        }
    }
}

/// Purely infinite simple, no sources.
pub fn pis_no_source<R: Rng>(rng: &mut R, max_n: usize, max_entry: usize) -> MultiGraph {
    graph_where(rng, max_n, max_entry, |g| {
        let r = classify_graph(g);
        r.purely_infinite_simple && !r.has_sources
    })
}

/// Purely infinite simple, no sources and no sinks.
pub fn pis_essential<R: Rng>(rng: &mut R, max_n: usize, max_entry: usize) -> MultiGraph {
    graph_where(rng, max_n, max_entry, |g| {
        let r = classify_graph(g);
        r.purely_infinite_simple && r.essential
    })
}

/// Each vertex gets a uniformly chosen class count, then each edge at it a
/// uniform class; empty classes are dropped.
pub fn partition<R: Rng>(rng: &mut R, g: &MultiGraph, side: Side) -> Partition {
    let classes: Vec<Vec<Vec<EdgeId>>> = g
        .vertices()
        .map(|v| {
            let edges = side.edges_at(g, v);
            if edges.is_empty() {
                return Vec::new();
            }
            let k = rng.gen_range(1..=edges.len());
            let mut cls = vec![Vec::new(); k];
            for e in edges {
                cls[rng.gen_range(0..k)].push(e);
            }
            cls.retain(|c| !c.is_empty());
            cls
        })
        .collect();
    Partition::new(g, side, classes).expect("random partitions cover every edge once")
}

/// Proper partition: vertices without edges on the far side (sinks for
/// in-partitions) keep a single class.
pub fn proper_in_partition<R: Rng>(rng: &mut R, g: &MultiGraph) -> Partition {
    let p = partition(rng, g, Side::In);
    let sinks = g.sinks();
    let classes = g
        .vertices()
        .map(|v| if sinks.contains(&v) { vec![p.classes(v).concat()] } else { p.classes(v).to_vec() })
        .map(|mut c| {
            c.retain(|x: &Vec<EdgeId>| !x.is_empty());
            c
        })
        .collect();
    Partition::new(g, Side::In, classes).expect("merging classes keeps a cover")
}

/// A Drinen vector with edge values in `0..=max` and vertex values at the
/// maximum over the relevant edges.
pub fn drinen_vector<R: Rng>(rng: &mut R, g: &MultiGraph, kind: DelayKind, max: u64) -> DrinenVector {
    let edges: Vec<u64> = (0..g.edge_count()).map(|_| rng.gen_range(0..=max)).collect();
    DrinenVector::from_edge_values(g, kind, edges).expect("vertex values are derived")
}

/// A uniformly chosen standard move applicable to `g` that keeps it within
/// `max_vertices`, or `None` if none was found in a few tries.
pub fn standard_move<R: Rng>(rng: &mut R, g: &MultiGraph, max_vertices: usize) -> Option<Move> {
    let n = g.vertex_count();
    for _ in 0..64 {
        let mv = match rng.gen_range(0..6) {
            0 if n < max_vertices => Move::Expand(rng.gen_range(0..n)),
            1 => {
                let pairs = moves::contractible_pairs(g);
                let Some(&(v, star)) = pairs.choose(rng) else { continue };
                Move::Contract { v, star }
            }
            k @ (2 | 3) => {
                let side = if k == 2 { Side::In } else { Side::Out };
                let v = rng.gen_range(0..n);
                let edges = side.edges_at(g, v);
                if edges.len() < 2 || n >= max_vertices {
                    continue;
                }
                let mut one = Vec::new();
                let mut two = Vec::new();
                for e in edges {
                    if rng.gen_bool(0.5) {
                        one.push(e)
                    } else {
                        two.push(e)
                    }
                }
                if one.is_empty() || two.is_empty() {
                    continue;
                }
                let classes = vec![(v, vec![one, two])];
                if side == Side::In {
                    Move::InSplit(classes)
                } else {
                    Move::OutSplit(classes)
                }
            }
            k @ (4 | 5) => {
                if n < 2 {
                    continue;
                }
                let x = rng.gen_range(0..n);
                let y = rng.gen_range(0..n);
                if x == y {
                    continue;
                }
                let Ok(blocks) = complete_blocks(g, &[vec![x.min(y), x.max(y)]]) else { continue };
                if k == 4 {
                    Move::InAmalgamate(blocks)
                } else {
                    Move::OutAmalgamate(blocks)
                }
            }
            _ => continue,
        };
        if mv.apply(g).is_ok() {
            return Some(mv);
        }
    }
    None
}

/// Applies `steps` random standard moves; returns the moves and the end
/// graph.
pub fn scramble<R: Rng>(rng: &mut R, g: &MultiGraph, steps: usize, max_vertices: usize) -> (Vec<Move>, MultiGraph) {
    let mut current = g.clone();
    let mut applied = Vec::new();
    while applied.len() < steps {
        let Some(mv) = standard_move(rng, &current, max_vertices) else { break };
        current = mv.apply(&current).expect("checked when drawn");
        applied.push(mv);
    }
    (applied, current)
}

/// A vertex on some cycle, if any.
pub fn cycle_vertex<R: Rng>(rng: &mut R, g: &MultiGraph) -> Option<VertexId> {
    g.cycle_vertices().choose(rng).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = pis_no_source(&mut rng(7), 4, 2);
        let b = pis_no_source(&mut rng(7), 4, 2);
        assert_eq!(a, b);
        let r = classify_graph(&a);
        assert!(r.purely_infinite_simple && !r.has_sources);
    }

    #[test]
    fn generated_moves_apply_and_are_standard() {
        let mut r = rng(DEFAULT_SEED);
        for _ in 0..20 {
            let g = pis_essential(&mut r, 3, 2);
            let (moves, h) = scramble(&mut r, &g, 3, 6);
            assert!(moves.iter().all(Move::is_standard));
            assert!(h.vertex_count() <= 6);
        }
    }

    #[test]
    fn partitions_cover() {
        let mut r = rng(1);
        let g = pis_no_source(&mut r, 4, 3);
        for side in [Side::In, Side::Out] {
            let p = partition(&mut r, &g, side);
            let total: usize = g.vertices().map(|v| p.classes(v).iter().map(Vec::len).sum::<usize>()).sum();
            assert_eq!(total, g.edge_count());
        }
        assert!(proper_in_partition(&mut r, &g).is_proper(&g));
    }
}
