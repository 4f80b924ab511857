use std::fmt::Write as _;

use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::moves::MoveError;

/// Which edge set of a vertex is being partitioned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `r⁻¹(v)`, used by in-splits.
    In,
    /// `s⁻¹(v)`, used by out-splits.
    Out,
}

impl Side {
    pub fn edges_at(self, g: &MultiGraph, v: VertexId) -> Vec<EdgeId> {
        match self {
            Side::In => g.in_edges(v),
            Side::Out => g.out_edges(v),
        }
    }
}

/// For every vertex, its in- or out-edges split into numbered classes
/// `1..=m(v)`; `m(v) = 0` exactly when the vertex has no such edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    side: Side,
    /// `classes[v][i]` is class `i + 1` at `v`, edge ids ascending.
    classes: Vec<Vec<Vec<EdgeId>>>,
}

impl Partition {
    pub fn new(g: &MultiGraph, side: Side, mut classes: Vec<Vec<Vec<EdgeId>>>) -> Result<Self, MoveError> {
        let bad = |msg: String| Err(MoveError::MalformedPartition(msg));
        if classes.len() != g.vertex_count() {
            return bad(format!("{} vertex entries for {} vertices", classes.len(), g.vertex_count()));
        }
        for (v, cls) in classes.iter_mut().enumerate() {
            let expected = side.edges_at(g, v);
            let mut seen: Vec<EdgeId> = Vec::new();
            for (i, c) in cls.iter_mut().enumerate() {
                if c.is_empty() {
                    return bad(format!("class {} at vertex {v} is empty", i + 1));
                }
                c.sort_unstable();
                seen.extend(c.iter().copied());
            }
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("classes at vertex {v} are not disjoint"));
            }
            if seen != expected {
                let which = if side == Side::In { "incoming" } else { "outgoing" };
                return bad(format!("classes at vertex {v} do not cover exactly its {which} edges {expected:?}"));
            }
        }
        Ok(Partition { side, classes })
    }

    /// Every edge in its own class.
    pub fn finest(g: &MultiGraph, side: Side) -> Self {
        let classes = g.vertices().map(|v| side.edges_at(g, v).into_iter().map(|e| vec![e]).collect()).collect();
        Partition { side, classes }
    }

    /// One class per vertex that has edges on this side.
    pub fn coarsest(g: &MultiGraph, side: Side) -> Self {
        let classes = g
            .vertices()
            .map(|v| {
                let es = side.edges_at(g, v);
                if es.is_empty() {
                    vec![]
                } else {
                    vec![es]
                }
            })
            .collect();
        Partition { side, classes }
    }

    /// From a 1-based class label per edge, relative to the edge's vertex.
    pub fn from_labels(g: &MultiGraph, side: Side, labels: &[usize]) -> Result<Self, MoveError> {
        if labels.len() != g.edge_count() {
            return Err(MoveError::MalformedPartition(format!("{} labels for {} edges", labels.len(), g.edge_count())));
        }
        let mut classes: Vec<Vec<Vec<EdgeId>>> = vec![Vec::new(); g.vertex_count()];
        for (e, &label) in labels.iter().enumerate() {
            if label == 0 {
                return Err(MoveError::MalformedPartition(format!("edge {e} has class 0; classes start at 1")));
            }
            let edge = g.edge(e);
            let v = if side == Side::In { edge.target } else { edge.source };
            if classes[v].len() < label {
                classes[v].resize(label, Vec::new());
            }
            classes[v][label - 1].push(e);
        }
        Self::new(g, side, classes)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `m(v)`.
    pub fn class_count(&self, v: VertexId) -> usize {
        self.classes[v].len()
    }

    pub fn classes(&self, v: VertexId) -> &[Vec<EdgeId>] {
        &self.classes[v]
    }

    /// 1-based class of `e` at the vertex owning it.
    pub fn class_of(&self, g: &MultiGraph, e: EdgeId) -> usize {
        let edge = g.edge(e);
        let v = if self.side == Side::In { edge.target } else { edge.source };
        self.classes[v].iter().position(|c| c.contains(&e)).expect("partition covers every edge") + 1
    }

    /// In-partitions are proper when no sink is split.
    pub fn is_proper(&self, g: &MultiGraph) -> bool {
        g.sinks().iter().all(|&v| self.class_count(v) <= 1)
    }

    /// Total number of classes.
    pub fn total_classes(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Lines `class v i: e1,e2,...`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, cls) in self.classes.iter().enumerate() {
            for (i, c) in cls.iter().enumerate() {
                let ids: Vec<String> = c.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "class {v} {}: {}", i + 1, ids.join(","));
            }
        }
        s
    }

    /// Parses `class v i: e1,e2,...` lines; `#` comments and blank lines are skipped.
    pub fn parse(g: &MultiGraph, side: Side, text: &str) -> Result<Self, MoveError> {
        let mut classes: Vec<Vec<Vec<EdgeId>>> = vec![Vec::new(); g.vertex_count()];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (v, i, ids) = parse_class_line(line).ok_or_else(|| {
                MoveError::MalformedPartition(format!("line {}: expected `class v i: e1,e2,...`", lineno + 1))
            })?;
            if v >= g.vertex_count() || i == 0 {
                return Err(MoveError::MalformedPartition(format!("line {}: bad vertex or class index", lineno + 1)));
            }
            if classes[v].len() < i {
                classes[v].resize(i, Vec::new());
            }
            classes[v][i - 1].extend(ids);
        }
        Self::new(g, side, classes)
    }
}

pub(crate) fn parse_class_line(line: &str) -> Option<(usize, usize, Vec<EdgeId>)> {
    let rest = line.strip_prefix("class")?;
    let (head, tail) = rest.split_once(':')?;
    let mut nums = head.split_whitespace().map(|t| t.trim_start_matches('v').parse::<usize>());
    let v = nums.next()?.ok()?;
    let i = nums.next()?.ok()?;
    if nums.next().is_some() {
        return None;
    }
    let ids = tail
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.trim_start_matches('e').parse::<usize>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some((v, i, ids))
}
