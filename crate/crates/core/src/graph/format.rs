//! Graph text format.
//!
//! ```text
//! # comments run to end of line
//! matrix 2
//! 1 1
//! 1 1
//! ```
//!
//! or an edge list, each line `i j k` meaning `k` parallel edges `i → j`:
//!
//! ```text
//! edges 2
//! 0 0 1
//! 0 1 1
//! 1 0 1
//! 1 1 1
//! ```
//!
//! Printing always produces the `matrix` block, so `print ∘ parse` is the
//! identity on printed text and `parse ∘ print` is the identity on graphs
//! whose edges are in `(source, target)` order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, MultiGraph};

/// Diagnostic with 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Non-empty, comment-stripped lines as (line number, tokens).
fn tokenize(input: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut rest = body;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            tokens.push(Token { text: &tail[..len], column: offset + start + 1 });
            offset += start + len;
            rest = &tail[len..];
        }
        if !tokens.is_empty() {
            out.push((idx + 1, tokens));
        }
    }
    out
}

fn number(line: usize, tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text.parse::<usize>().map_err(|_| {
        ParseError::at(line, tok.column, format!("expected {what} (a non-negative integer), found `{}`", tok.text))
    })
}

pub fn parse_graph(input: &str) -> Result<MultiGraph, ParseError> {
    let lines = tokenize(input);
    let end_line = input.lines().count().max(1);
    let Some((hline, header)) = lines.first() else {
        return Err(ParseError::at(end_line, 1, "empty input: expected `matrix n` or `edges n`"));
    };
    let kind = header[0].text;
    if header.len() != 2 {
        let col = header.get(2).map_or(header[0].column, |t| t.column);
        return Err(ParseError::at(*hline, col, format!("header must be `{kind} n`")));
    }
    let n = number(*hline, &header[1], "vertex count")?;
    if n == 0 {
        return Err(ParseError::at(*hline, header[1].column, "a graph needs at least one vertex"));
    }
    let body = &lines[1..];
    let edges = match kind {
        "matrix" => parse_matrix(n, body, end_line)?,
        "edges" => parse_edges(n, body)?,
        other => {
            return Err(ParseError::at(
                *hline,
                header[0].column,
                format!("unknown block `{other}`; expected `matrix` or `edges`"),
            ))
        }
    };
    MultiGraph::new(n, edges).map_err(|e| ParseError::at(*hline, 1, e.to_string()))
}

fn parse_matrix(n: usize, body: &[(usize, Vec<Token<'_>>)], end_line: usize) -> Result<Vec<Edge>, ParseError> {
    if body.len() < n {
        return Err(ParseError::at(end_line, 1, format!("matrix has {} rows, expected {n}", body.len())));
    }
    if let Some((line, toks)) = body.get(n) {
        return Err(ParseError::at(*line, toks[0].column, "unexpected content after the last matrix row"));
    }
    let mut edges = Vec::new();
    for (i, (line, toks)) in body.iter().enumerate() {
        if toks.len() != n {
            let col = toks.get(n).map_or_else(|| toks.last().map_or(1, |t| t.column + t.text.len()), |t| t.column);
            return Err(ParseError::at(*line, col, format!("row has {} entries, expected {n}", toks.len())));
        }
        for (j, tok) in toks.iter().enumerate() {
            let k = number(*line, tok, "edge multiplicity")?;
            edges.extend(std::iter::repeat_n(Edge { source: i, target: j }, k));
        }
    }
    Ok(edges)
}

fn parse_edges(n: usize, body: &[(usize, Vec<Token<'_>>)]) -> Result<Vec<Edge>, ParseError> {
    let mut edges = Vec::new();
    for (line, toks) in body {
        if toks.len() != 3 {
            let col = toks.get(3).map_or(toks[0].column, |t| t.column);
            return Err(ParseError::at(*line, col, "edge line must be `i j k`"));
        }
        let source = number(*line, &toks[0], "source vertex")?;
        let target = number(*line, &toks[1], "target vertex")?;
        let k = number(*line, &toks[2], "edge count")?;
        for (v, tok) in [(source, &toks[0]), (target, &toks[1])] {
            if v >= n {
                return Err(ParseError::at(*line, tok.column, format!("vertex {v} out of range 0..{n}")));
            }
        }
        edges.extend(std::iter::repeat_n(Edge { source, target }, k));
    }
    Ok(edges)
}

impl MultiGraph {
    /// Text in the `matrix` block form.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Text in the `edges` block form, one line per nonzero multiplicity.
    pub fn to_edges_text(&self) -> String {
        let mut s = format!("edges {}\n", self.vertex_count());
        for ((i, j), k) in self.multiplicities() {
            let _ = writeln!(s, "{i} {j} {k}");
        }
        s
    }
}
