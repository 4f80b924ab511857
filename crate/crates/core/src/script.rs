//! Move scripts: one `move <name> <args>` line per move, with split
//! partitions given by `class v i: e1,e2,...` lines underneath.
//!
//! ```text
//! move expand 0
//! move contract 0 3
//! move in-split            # vertices without class lines keep one class
//! class 0 1: 0
//! class 0 2: 2
//! move in-amalgamate 0,1   # unlisted vertices are singleton blocks
//! move out-delay 1,0,0     # edge values, optionally followed by vertex values
//! move shift 0 1
//! move minus               # or `minus 2` to choose the attach vertex
//! move eliminate 4
//! ```
//!
//! Blocks are ordered by least member, so the vertex a block becomes is
//! independent of how the line lists them.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::moves::{self, DelayKind, DrinenVector, MoveError, Partition, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    EliminateSource(VertexId),
    Expand(VertexId),
    Contract {
        v: VertexId,
        star: VertexId,
    },
    /// Classes per vertex as edge-id lists; vertices left out keep a
    /// single class.
    InSplit(Vec<(VertexId, Vec<Vec<EdgeId>>)>),
    OutSplit(Vec<(VertexId, Vec<Vec<EdgeId>>)>),
    InAmalgamate(Vec<Vec<VertexId>>),
    OutAmalgamate(Vec<Vec<VertexId>>),
    OutDelay {
        edges: Vec<u64>,
        vertices: Option<Vec<u64>>,
    },
    InDelay {
        edges: Vec<u64>,
        vertices: Option<Vec<u64>>,
    },
    Shift {
        v: VertexId,
        w: VertexId,
    },
    Minus(Option<VertexId>),
    Minus1(Option<VertexId>),
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::EliminateSource(_) => "eliminate",
            Move::Expand(_) => "expand",
            Move::Contract { .. } => "contract",
            Move::InSplit(_) => "in-split",
            Move::OutSplit(_) => "out-split",
            Move::InAmalgamate(_) => "in-amalgamate",
            Move::OutAmalgamate(_) => "out-amalgamate",
            Move::OutDelay { .. } => "out-delay",
            Move::InDelay { .. } => "in-delay",
            Move::Shift { .. } => "shift",
            Move::Minus(_) => "minus",
            Move::Minus1(_) => "minus1",
        }
    }

    /// One of the six flow-equivalence moves.
    pub fn is_standard(&self) -> bool {
        matches!(
            self,
            Move::Expand(_)
                | Move::Contract { .. }
                | Move::InSplit(_)
                | Move::OutSplit(_)
                | Move::InAmalgamate(_)
                | Move::OutAmalgamate(_)
        )
    }

    /// A split move carrying a full partition.
    pub fn from_partition(p: &Partition, g: &MultiGraph) -> Move {
        let classes = g.vertices().filter(|&v| p.class_count(v) > 1).map(|v| (v, p.classes(v).to_vec())).collect();
        match p.side() {
            Side::In => Move::InSplit(classes),
            Side::Out => Move::OutSplit(classes),
        }
    }

    pub fn apply(&self, g: &MultiGraph) -> Result<MultiGraph, MoveError> {
        match self {
            Move::EliminateSource(v) => moves::eliminate_source(g, *v),
            Move::Expand(v) => moves::expand(g, *v),
            Move::Contract { v, star } => moves::contract(g, *v, *star),
            Move::InSplit(cls) => Ok(moves::in_split(g, &partition(g, Side::In, cls)?)?.0),
            Move::OutSplit(cls) => Ok(moves::out_split(g, &partition(g, Side::Out, cls)?)?.0),
            Move::InAmalgamate(blocks) => moves::in_amalgamate(g, &complete_blocks(g, blocks)?),
            Move::OutAmalgamate(blocks) => moves::out_amalgamate(g, &complete_blocks(g, blocks)?),
            Move::OutDelay { edges, vertices } => moves::out_delay(g, &delay(g, DelayKind::Source, edges, vertices)?),
            Move::InDelay { edges, vertices } => moves::in_delay(g, &delay(g, DelayKind::Range, edges, vertices)?),
            Move::Shift { v, w } => moves::shift(g, *v, *w),
            Move::Minus(a) => a.map_or_else(|| moves::minus(g), |a| moves::minus_at(g, a)),
            Move::Minus1(a) => a.map_or_else(|| moves::minus1(g), |a| moves::minus1_at(g, a)),
        }
    }
}

fn partition(g: &MultiGraph, side: Side, given: &[(VertexId, Vec<Vec<EdgeId>>)]) -> Result<Partition, MoveError> {
    let mut classes: Vec<Option<Vec<Vec<EdgeId>>>> = vec![None; g.vertex_count()];
    for (v, cls) in given {
        g.check_vertex(*v)?;
        if classes[*v].replace(cls.clone()).is_some() {
            return Err(MoveError::MalformedPartition(format!("vertex {v} is given twice")));
        }
    }
    let full = g
        .vertices()
        .zip(classes)
        .map(|(v, c)| {
            c.unwrap_or_else(|| {
                let es = side.edges_at(g, v);
                if es.is_empty() {
                    vec![]
                } else {
                    vec![es]
                }
            })
        })
        .collect();
    Partition::new(g, side, full)
}

/// Adds singleton blocks for unlisted vertices and orders blocks by least
/// member.
pub fn complete_blocks(g: &MultiGraph, blocks: &[Vec<VertexId>]) -> Result<Vec<Vec<VertexId>>, MoveError> {
    let mut seen = vec![false; g.vertex_count()];
    for b in blocks {
        for &v in b {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(MoveError::NotRealizable(format!("vertex {v} appears in two blocks")));
            }
        }
    }
    let mut all: Vec<Vec<VertexId>> = blocks.iter().filter(|b| !b.is_empty()).cloned().collect();
    all.extend(g.vertices().filter(|&v| !seen[v]).map(|v| vec![v]));
    all.sort_by_key(|b| *b.iter().min().expect("blocks are nonempty"));
    Ok(all)
}

fn delay(
    g: &MultiGraph,
    kind: DelayKind,
    edges: &[u64],
    vertices: &Option<Vec<u64>>,
) -> Result<DrinenVector, MoveError> {
    match vertices {
        Some(vs) => DrinenVector::new(g, kind, vs.clone(), edges.to_vec()),
        None => DrinenVector::from_edge_values(g, kind, edges.to_vec()),
    }
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "move {}", self.name())?;
        match self {
            Move::EliminateSource(v) | Move::Expand(v) => write!(f, " {v}"),
            Move::Contract { v, star } => write!(f, " {v} {star}"),
            Move::Shift { v, w } => write!(f, " {v} {w}"),
            Move::Minus(a) | Move::Minus1(a) => a.map_or(Ok(()), |a| write!(f, " {a}")),
            Move::InAmalgamate(blocks) | Move::OutAmalgamate(blocks) => {
                for b in blocks.iter().filter(|b| b.len() > 1) {
                    write!(f, " {}", list(b))?;
                }
                Ok(())
            }
            Move::OutDelay { edges, vertices } | Move::InDelay { edges, vertices } => {
                write!(f, " {}", list(edges))?;
                vertices.as_ref().map_or(Ok(()), |vs| write!(f, " {}", list(vs)))
            }
            Move::InSplit(cls) | Move::OutSplit(cls) => {
                let mut s = String::new();
                for (v, classes) in cls {
                    for (i, c) in classes.iter().enumerate() {
                        let _ = write!(s, "\nclass {v} {}: {}", i + 1, list(c));
                    }
                }
                f.write_str(&s)
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses a script into moves with the line each starts on.
pub fn parse_script(text: &str) -> Result<Vec<(usize, Move)>, ScriptError> {
    let mut out: Vec<(usize, Move)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let err = |col: usize, msg: String| ScriptError { line, column: indent + col, message: msg };
        if trimmed.starts_with("class") {
            let (v, i, ids) =
                moves_parse_class(trimmed).ok_or_else(|| err(1, "expected `class v i: e1,e2,...`".into()))?;
            let Some((_, Move::InSplit(cls) | Move::OutSplit(cls))) = out.last_mut() else {
                return Err(err(1, "class line outside a split move".into()));
            };
            if i == 0 {
                return Err(err(1, "class indices start at 1".into()));
            }
            let entry = match cls.iter_mut().position(|(w, _)| *w == v) {
                Some(k) => &mut cls[k].1,
                None => {
                    cls.push((v, Vec::new()));
                    &mut cls.last_mut().expect("just pushed").1
                }
            };
            if entry.len() < i {
                entry.resize(i, Vec::new());
            }
            entry[i - 1].extend(ids);
            continue;
        }
        let tokens = tokenize(trimmed);
        if tokens[0].1 != "move" {
            return Err(err(1, format!("expected `move` or `class`, found `{}`", tokens[0].1)));
        }
        let Some(&(ncol, name)) = tokens.get(1) else {
            return Err(err(trimmed.len() + 1, "missing move name".into()));
        };
        let args = &tokens[2..];
        let mv = parse_move(name, args).map_err(|(k, msg)| {
            let col = match k {
                Some(k) => args[k].0,
                None => ncol,
            };
            err(col, msg)
        })?;
        out.push((line, mv));
    }
    Ok(out)
}

fn moves_parse_class(line: &str) -> Option<(usize, usize, Vec<EdgeId>)> {
    // reuse the partition syntax, allowing `-` for an empty list
    let line = line.replace(": -", ":");
    crate::moves::parse_class_line(&line)
}

fn tokenize(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut rest = s;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        out.push((offset + start + 1, &tail[..len]));
        offset += start + len;
        rest = &tail[len..];
    }
    out
}

type ArgError = (Option<usize>, String);

fn parse_move(name: &str, args: &[(usize, &str)]) -> Result<Move, ArgError> {
    let arity = |lo: usize, hi: usize| -> Result<(), ArgError> {
        if args.len() < lo || args.len() > hi {
            let at = if args.len() > hi { Some(hi) } else { None };
            let expected = if lo == hi { format!("{lo}") } else { format!("{lo} to {hi}") };
            return Err((at, format!("`{name}` takes {expected} arguments, got {}", args.len())));
        }
        Ok(())
    };
    let num = |k: usize| -> Result<usize, ArgError> {
        let t = args[k].1;
        t.strip_prefix('v')
            .unwrap_or(t)
            .parse()
            .map_err(|_| (Some(k), format!("expected a vertex index, found `{}`", args[k].1)))
    };
    let nums = |k: usize| -> Result<Vec<u64>, ArgError> {
        if args[k].1 == "-" {
            return Ok(vec![]);
        }
        args[k]
            .1
            .split(',')
            .map(|t| t.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| (Some(k), format!("expected comma-separated integers, found `{}`", args[k].1)))
    };
    Ok(match name {
        "eliminate" => {
            arity(1, 1)?;
            Move::EliminateSource(num(0)?)
        }
        "expand" => {
            arity(1, 1)?;
            Move::Expand(num(0)?)
        }
        "contract" => {
            arity(2, 2)?;
            Move::Contract { v: num(0)?, star: num(1)? }
        }
        "shift" => {
            arity(2, 2)?;
            Move::Shift { v: num(0)?, w: num(1)? }
        }
        "minus" | "minus1" => {
            arity(0, 1)?;
            let a = if args.is_empty() { None } else { Some(num(0)?) };
            if name == "minus" {
                Move::Minus(a)
            } else {
                Move::Minus1(a)
            }
        }
        "in-split" | "out-split" => {
            arity(0, 0)?;
            if name == "in-split" {
                Move::InSplit(vec![])
            } else {
                Move::OutSplit(vec![])
            }
        }
        "in-amalgamate" | "out-amalgamate" => {
            let blocks = (0..args.len())
                .map(|k| nums(k).map(|b| b.into_iter().map(|v| v as usize).collect()))
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            if name == "in-amalgamate" {
                Move::InAmalgamate(blocks)
            } else {
                Move::OutAmalgamate(blocks)
            }
        }
        "out-delay" | "in-delay" => {
            arity(1, 2)?;
            let edges = nums(0)?;
            let vertices = if args.len() == 2 { Some(nums(1)?) } else { None };
            if name == "out-delay" {
                Move::OutDelay { edges, vertices }
            } else {
                Move::InDelay { edges, vertices }
            }
        }
        other => return Err((None, format!("unknown move `{other}`"))),
    })
}

/// Renders moves as a script that [`parse_script`] reads back.
pub fn to_script(moves: &[Move]) -> String {
    let mut s = String::new();
    for m in moves {
        let _ = writeln!(s, "{m}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let moves = vec![
            Move::Expand(0),
            Move::Contract { v: 0, star: 2 },
            Move::InSplit(vec![(0, vec![vec![0], vec![2]])]),
            Move::OutAmalgamate(vec![vec![0, 1], vec![2]]),
            Move::OutDelay { edges: vec![1, 0], vertices: Some(vec![1, 3]) },
            Move::InDelay { edges: vec![], vertices: None },
            Move::Shift { v: 0, w: 1 },
            Move::Minus(None),
            Move::Minus1(Some(2)),
            Move::EliminateSource(4),
        ];
        let text = to_script(&moves);
        let back: Vec<Move> = parse_script(&text).unwrap().into_iter().map(|(_, m)| m).collect();
        // singleton blocks are implicit in the text form
        let mut expected = moves.clone();
        expected[3] = Move::OutAmalgamate(vec![vec![0, 1]]);
        assert_eq!(back, expected);
    }

    #[test]
    fn applies_split_with_implicit_classes() {
        let g = MultiGraph::from_rows(&[[1, 1], [1, 0]]).unwrap();
        let script = "move in-split\nclass 0 1: 0\nclass 0 2: 2\n";
        let (_, m) = parse_script(script).unwrap().remove(0);
        let h = m.apply(&g).unwrap();
        assert_eq!(h.incidence_matrix(), crate::IntMatrix::from_rows(&[[1, 0, 1], [1, 0, 1], [0, 1, 0]]));
        let back = Move::InAmalgamate(vec![vec![1, 0]]).apply(&h).unwrap();
        assert!(back.same_matrix(&g));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_script("move expand\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        let e = parse_script("\n  move contract 0 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 19));
        let e = parse_script("move warp 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        let e = parse_script("class 0 1: 0\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_script("move expand 0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 15));
    }
}
