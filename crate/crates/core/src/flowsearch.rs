//! Bounded search for explicit flow equivalences.
//!
//! Both ends are explored breadth-first over isomorphism classes (canonical
//! forms), using elementary standard moves:
//!
//! * `expand v`, and `contract v v*` wherever the pattern occurs;
//! * in- and out-splits of a single vertex into two classes;
//! * in- and out-amalgamations of two vertices.
//!
//! Every elementary move has an elementary inverse, so the backward search
//! uses the same generator. A split into more classes is a composition of
//! two-class splits, so nothing is lost in the long run, only in depth.
//!
//! The frontier with fewer nodes grows first; ties go forward. The first
//! meeting found while finishing the shallowest meeting level wins.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{canonical_form, classify_graph, find_isomorphism, CanonicalForm, MultiGraph, VertexId};
use crate::invariants::{equiv_det_pair, franks_triple};
use crate::moves::{self, Side};
use crate::script::Move;

#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Total number of moves in a returned sequence.
    pub max_depth: usize,
    /// Largest graph visited; at most [`crate::graph::MAX_ISO_VERTICES`].
    pub max_vertices: usize,
    /// Two-class splits tried per vertex and side before the rest are
    /// skipped.
    pub max_partitions: usize,
    /// Largest edge multiplicity allowed in a visited graph.
    pub max_entry: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_depth: 6, max_vertices: 6, max_partitions: 512, max_entry: 9 }
    }
}

/// What the search skipped, reported when it gives up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: usize,
    pub nodes_seen: usize,
    pub pruned_vertices: usize,
    pub pruned_entries: usize,
    pub pruned_partitions: usize,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} nodes expanded, {} seen; pruned {} over the vertex bound, {} over the entry cap, {} splits over the partition cap",
            self.nodes_expanded, self.nodes_seen, self.pruned_vertices, self.pruned_entries, self.pruned_partitions
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search hypotheses fail: {0}")]
    Hypothesis(String),
    #[error("graphs are not flow equivalent: {0}")]
    InvariantMismatch(String),
    #[error("no sequence within depth {depth}: {stats}")]
    NotFoundWithinBounds { depth: usize, stats: SearchStats },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceStep {
    pub mv: Move,
    /// The graph after the move.
    pub graph: MultiGraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSequence {
    pub start: MultiGraph,
    pub steps: Vec<SequenceStep>,
    /// `last.permute(&final_permutation)` has the target's matrix.
    pub final_permutation: Vec<VertexId>,
    pub stats: SearchStats,
}

impl MoveSequence {
    pub fn last(&self) -> &MultiGraph {
        self.steps.last().map_or(&self.start, |s| &s.graph)
    }

    /// Re-applies every move and compares snapshots.
    pub fn replays(&self) -> bool {
        let mut g = self.start.clone();
        for step in &self.steps {
            match step.mv.apply(&g) {
                Ok(h) if h == step.graph => g = h,
                _ => return false,
            }
        }
        true
    }

    /// Replays and checks the end is the target up to the stored relabelling.
    pub fn reaches(&self, target: &MultiGraph) -> bool {
        self.replays()
            && self.final_permutation.len() == target.vertex_count()
            && self.last().vertex_count() == target.vertex_count()
            && self.last().permute(&self.final_permutation).same_matrix(target)
    }

    /// The moves as a replayable script.
    pub fn to_script(&self) -> String {
        let moves: Vec<Move> = self.steps.iter().map(|s| s.mv.clone()).collect();
        crate::script::to_script(&moves)
    }
}

/// Elementary move in count form: splits say how many edges from (or to)
/// each vertex go into the first class.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    Expand(VertexId),
    Contract(VertexId, VertexId),
    InSplit(VertexId, Vec<usize>),
    OutSplit(VertexId, Vec<usize>),
    InAmalgamate(VertexId, VertexId),
    OutAmalgamate(VertexId, VertexId),
}

impl Step {
    fn to_move(&self, g: &MultiGraph) -> Move {
        match self {
            Step::Expand(v) => Move::Expand(*v),
            Step::Contract(v, s) => Move::Contract { v: *v, star: *s },
            Step::InSplit(v, first) => Move::InSplit(vec![(*v, split_classes(g, Side::In, *v, first))]),
            Step::OutSplit(v, first) => Move::OutSplit(vec![(*v, split_classes(g, Side::Out, *v, first))]),
            Step::InAmalgamate(x, y) => Move::InAmalgamate(vec![vec![*x, *y]]),
            Step::OutAmalgamate(x, y) => Move::OutAmalgamate(vec![vec![*x, *y]]),
        }
    }

    fn apply(&self, g: &MultiGraph) -> Option<MultiGraph> {
        self.to_move(g).apply(g).ok()
    }

    /// Same step on `g.permute(perm)`.
    fn transport(&self, perm: &[VertexId]) -> Step {
        let counts = |first: &[usize]| {
            let mut out = vec![0; first.len()];
            for (u, &c) in first.iter().enumerate() {
                out[perm[u]] = c;
            }
            out
        };
        let pair = |x: VertexId, y: VertexId| (perm[x].min(perm[y]), perm[x].max(perm[y]));
        match self {
            Step::Expand(v) => Step::Expand(perm[*v]),
            Step::Contract(v, s) => Step::Contract(perm[*v], perm[*s]),
            Step::InSplit(v, f) => Step::InSplit(perm[*v], counts(f)),
            Step::OutSplit(v, f) => Step::OutSplit(perm[*v], counts(f)),
            Step::InAmalgamate(x, y) => {
                let (a, b) = pair(*x, *y);
                Step::InAmalgamate(a, b)
            }
            Step::OutAmalgamate(x, y) => {
                let (a, b) = pair(*x, *y);
                Step::OutAmalgamate(a, b)
            }
        }
    }

    /// The step undoing `self`, stated on `self.apply(parent)`.
    fn inverse(&self, parent: &MultiGraph) -> Step {
        match self {
            Step::Expand(v) => Step::Contract(*v, parent.vertex_count()),
            Step::Contract(v, s) => Step::Expand(if v > s { v - 1 } else { *v }),
            // the two halves of v sit at v and v + 1
            Step::InSplit(v, _) => Step::InAmalgamate(*v, v + 1),
            Step::OutSplit(v, _) => Step::OutAmalgamate(*v, v + 1),
            Step::InAmalgamate(x, y) => {
                let (q, p) = moves::in_amalgamate_with_partition(parent, &blocks(parent, *x, *y))
                    .expect("step was applicable to its parent");
                Step::InSplit(*x, first_class_counts(&q, &p, Side::In, *x))
            }
            Step::OutAmalgamate(x, y) => {
                let (q, p) = moves::out_amalgamate_with_partition(parent, &blocks(parent, *x, *y))
                    .expect("step was applicable to its parent");
                Step::OutSplit(*x, first_class_counts(&q, &p, Side::Out, *x))
            }
        }
    }
}

fn blocks(g: &MultiGraph, x: VertexId, y: VertexId) -> Vec<Vec<VertexId>> {
    crate::script::complete_blocks(g, &[vec![x, y]]).expect("vertices are valid")
}

fn first_class_counts(g: &MultiGraph, p: &moves::Partition, side: Side, v: VertexId) -> Vec<usize> {
    let mut counts = vec![0; g.vertex_count()];
    for &e in &p.classes(v)[0] {
        let edge = g.edge(e);
        counts[if side == Side::In { edge.source } else { edge.target }] += 1;
    }
    counts
}

/// Edges at `v` on `side`: the first `first[u]` from each neighbour `u`
/// form class 1, the rest class 2.
fn split_classes(g: &MultiGraph, side: Side, v: VertexId, first: &[usize]) -> Vec<Vec<usize>> {
    let mut taken = vec![0; g.vertex_count()];
    let (mut one, mut two) = (Vec::new(), Vec::new());
    for e in side.edges_at(g, v) {
        let edge = g.edge(e);
        let u = if side == Side::In { edge.source } else { edge.target };
        if taken[u] < first.get(u).copied().unwrap_or(0) {
            taken[u] += 1;
            one.push(e);
        } else {
            two.push(e);
        }
    }
    vec![one, two]
}

/// Two-class splits at `v` up to swapping the classes, in lexicographic
/// order of the first-class counts. Returns `true` if the cap cut it short.
fn two_class_splits(g: &MultiGraph, side: Side, v: VertexId, cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
    let n = g.vertex_count();
    let avail: Vec<usize> =
        (0..n).map(|u| if side == Side::In { g.multiplicity(u, v) } else { g.multiplicity(v, u) }).collect();
    let total: usize = avail.iter().sum();
    if total < 2 {
        return false;
    }
    let mut c = vec![0; n];
    let mut produced = 0;
    loop {
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            if c[k] < avail[k] {
                c[k] += 1;
                break;
            }
            c[k] = 0;
        }
        let size: usize = c.iter().sum();
        if size == 0 || size == total {
            continue;
        }
        let complement: Vec<usize> = avail.iter().zip(&c).map(|(a, x)| a - x).collect();
        if c > complement {
            continue;
        }
        if produced == cap {
            return true;
        }
        produced += 1;
        out.push(c.clone());
    }
}

struct Generator<'a> {
    limits: &'a SearchLimits,
}

impl Generator<'_> {
    /// Applicable steps in the fixed order expand, contract, in-split,
    /// out-split, in-amalgamate, out-amalgamate.
    fn steps(&self, g: &MultiGraph, stats: &mut SearchStats) -> Vec<Step> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        let grows = n < self.limits.max_vertices;
        if grows {
            out.extend(g.vertices().map(Step::Expand));
        } else {
            stats.pruned_vertices += n;
        }
        out.extend(moves::contractible_pairs(g).into_iter().map(|(v, s)| Step::Contract(v, s)));
        for side in [Side::In, Side::Out] {
            for v in g.vertices() {
                let mut firsts = Vec::new();
                if two_class_splits(g, side, v, self.limits.max_partitions, &mut firsts) {
                    stats.pruned_partitions += 1;
                }
                if !grows {
                    stats.pruned_vertices += firsts.len();
                    continue;
                }
                out.extend(firsts.into_iter().map(|f| match side {
                    Side::In => Step::InSplit(v, f),
                    Side::Out => Step::OutSplit(v, f),
                }));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                out.push(Step::InAmalgamate(x, y));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                out.push(Step::OutAmalgamate(x, y));
            }
        }
        out
    }
}

struct Node {
    graph: MultiGraph,
    /// Parent key and the step taking the parent's graph to `graph`.
    parent: Option<(CanonicalForm, Step)>,
}

struct Tree {
    nodes: HashMap<CanonicalForm, Node>,
    frontier: VecDeque<CanonicalForm>,
    depth: usize,
}

impl Tree {
    fn new(g: &MultiGraph, key: CanonicalForm) -> Self {
        let mut nodes = HashMap::new();
        nodes.insert(key.clone(), Node { graph: g.clone(), parent: None });
        Tree { nodes, frontier: VecDeque::from([key]), depth: 0 }
    }

    fn chain(&self, mut key: CanonicalForm) -> Vec<(CanonicalForm, Option<Step>)> {
        let mut out = Vec::new();
        loop {
            let node = &self.nodes[&key];
            match &node.parent {
                Some((p, s)) => {
                    out.push((key.clone(), Some(s.clone())));
                    key = p.clone();
                }
                None => {
                    out.push((key, None));
                    return out;
                }
            }
        }
    }
}

fn check_hypotheses(g: &MultiGraph, which: &str, limits: &SearchLimits) -> Result<(), SearchError> {
    let r = classify_graph(g);
    let mut missing = Vec::new();
    if !r.essential {
        missing.push("essential");
    }
    if !r.irreducible {
        missing.push("irreducible");
    }
    if r.trivial {
        missing.push("nontrivial");
    }
    if !missing.is_empty() {
        return Err(SearchError::Hypothesis(format!("the {which} graph is not {}", missing.join(", "))));
    }
    if g.vertex_count() > limits.max_vertices {
        return Err(SearchError::Hypothesis(format!(
            "the {which} graph has {} vertices, above the bound {}",
            g.vertex_count(),
            limits.max_vertices
        )));
    }
    Ok(())
}

pub fn find_sequence(src: &MultiGraph, dst: &MultiGraph, limits: &SearchLimits) -> Result<MoveSequence, SearchError> {
    if limits.max_vertices > crate::graph::MAX_ISO_VERTICES {
        return Err(SearchError::Hypothesis(format!(
            "vertex bound {} exceeds the isomorphism limit {}",
            limits.max_vertices,
            crate::graph::MAX_ISO_VERTICES
        )));
    }
    check_hypotheses(src, "source", limits)?;
    check_hypotheses(dst, "target", limits)?;
    let (a, b) = (franks_triple(src), franks_triple(dst));
    if !equiv_det_pair(&a, &b) {
        return Err(SearchError::InvariantMismatch(format!(
            "{} with det {} vs {} with det {}",
            a.group(),
            a.determinant(),
            b.group(),
            b.determinant()
        )));
    }
    let key = |g: &MultiGraph| canonical_form(g).expect("within the isomorphism limit");
    let mut stats = SearchStats::default();
    let (ks, kd) = (key(src), key(dst));
    let mut fwd = Tree::new(src, ks.clone());
    let mut bwd = Tree::new(dst, kd.clone());
    stats.nodes_seen = if ks == kd { 1 } else { 2 };
    let gen = Generator { limits };

    let mut meet = if ks == kd { Some(ks) } else { None };
    while meet.is_none() && fwd.depth + bwd.depth < limits.max_depth {
        let grow_fwd = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if grow_fwd { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        if this.frontier.is_empty() {
            break;
        }
        let level: Vec<CanonicalForm> = this.frontier.drain(..).collect();
        this.depth += 1;
        for k in level {
            stats.nodes_expanded += 1;
            let g = this.nodes[&k].graph.clone();
            for step in gen.steps(&g, &mut stats) {
                let Some(h) = step.apply(&g) else { continue };
                if h.has_large_entries(limits.max_entry) {
                    stats.pruned_entries += 1;
                    continue;
                }
                let hk = key(&h);
                if this.nodes.contains_key(&hk) {
                    continue;
                }
                stats.nodes_seen += 1;
                let hit = other.nodes.contains_key(&hk);
                this.nodes.insert(hk.clone(), Node { graph: h, parent: Some((k.clone(), step)) });
                this.frontier.push_back(hk.clone());
                if hit && meet.is_none() {
                    meet = Some(hk);
                }
            }
        }
    }
    let Some(meet) = meet else {
        return Err(SearchError::NotFoundWithinBounds { depth: limits.max_depth, stats });
    };
    Ok(assemble(src, dst, &fwd, &bwd, meet, stats))
}

fn assemble(
    src: &MultiGraph,
    dst: &MultiGraph,
    fwd: &Tree,
    bwd: &Tree,
    meet: CanonicalForm,
    stats: SearchStats,
) -> MoveSequence {
    let mut steps = Vec::new();
    // forward half replays exactly on the stored graphs
    let mut chain = fwd.chain(meet.clone());
    chain.reverse();
    let mut current = src.clone();
    for (k, step) in chain.into_iter().skip(1) {
        let step = step.expect("non-root nodes have parents");
        let mv = step.to_move(&current);
        current = mv.apply(&current).expect("stored step applies");
        debug_assert!(current == fwd.nodes[&k].graph);
        steps.push(SequenceStep { mv, graph: current.clone() });
    }
    // backward half: undo each stored step, transported onto `current`
    let chain = bwd.chain(meet);
    for pair in chain.windows(2) {
        let (child_key, step) = (&pair[0].0, pair[0].1.as_ref().expect("non-root nodes have parents"));
        let parent = &bwd.nodes[&pair[1].0].graph;
        let child = &bwd.nodes[child_key].graph;
        let inverse = step.inverse(parent);
        let perm = find_isomorphism(child, &current).expect("within limit").expect("same canonical form");
        let local = inverse.transport(&perm);
        let mv = local.to_move(&current);
        current = mv.apply(&current).expect("inverse step applies");
        steps.push(SequenceStep { mv, graph: current.clone() });
    }
    let final_permutation = find_isomorphism(&current, dst).expect("within limit").expect("reached the target class");
    MoveSequence { start: src.clone(), steps, final_permutation, stats }
}
