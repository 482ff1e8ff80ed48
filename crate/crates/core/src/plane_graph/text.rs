//! Line-oriented plane-graph files.
//!
//! ```text
//! # comment
//! planegraph <V> <E>
//! <v>: <n1> <n2> ... <nk>     clockwise rotation of v
//! outer: <u> <v>              a dart whose face is the outer face
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn vertex(tok: &str, line: usize) -> Result<Vertex, ParseError> {
    tok.parse::<Vertex>()
        .map_err(|_| err(line, format!("expected a vertex id, found `{tok}`")))
}

pub fn parse(input: &str) -> Result<PlaneGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    let mut outer = None;
    let mut last_line = 0;
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if header.is_none() {
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "planegraph" {
                return Err(err(line, "expected header `planegraph <V> <E>`"));
            }
            let v = toks[1].parse().map_err(|_| err(line, "bad vertex count"))?;
            let e = toks[2].parse().map_err(|_| err(line, "bad edge count"))?;
            header = Some((v, e, line));
            continue;
        }
        let Some((head, rest)) = text.split_once(':') else {
            return Err(err(line, "expected `<v>: ...` or `outer: <u> <v>`"));
        };
        let head = head.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if head == "outer" {
            if outer.is_some() {
                return Err(err(line, "duplicate outer line"));
            }
            if toks.len() != 2 {
                return Err(err(line, "outer line needs exactly two vertices"));
            }
            outer = Some((vertex(toks[0], line)?, vertex(toks[1], line)?, line));
            continue;
        }
        if outer.is_some() {
            return Err(err(line, "vertex line after the outer line"));
        }
        let v = vertex(head, line)?;
        let nbrs = toks
            .iter()
            .map(|t| vertex(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if rot.insert(v, nbrs).is_some() {
            return Err(err(line, format!("vertex {v} listed twice")));
        }
    }
    let (nv, ne, hline) = header.ok_or_else(|| err(last_line.max(1), "missing header"))?;
    let (u, v, oline) = outer.ok_or_else(|| err(last_line.max(1), "missing `outer:` line"))?;
    if rot.len() != nv {
        return Err(err(
            hline,
            format!("header says {nv} vertices, found {}", rot.len()),
        ));
    }
    let degree_sum: usize = rot.values().map(Vec::len).sum();
    if degree_sum != 2 * ne {
        return Err(err(
            hline,
            format!("header says {ne} edges, rotations give {}/2", degree_sum),
        ));
    }
    if nv < 3 {
        return Err(err(hline, "degenerate graph: need at least 3 vertices"));
    }
    PlaneGraph::from_rotations(rot, (u, v)).map_err(|e| err(oline, e.to_string()))
}

/// Canonical text: vertices ascending, each rotation starting at its
/// smallest neighbour, outer dart the smallest dart of the outer face.
pub fn print(g: &PlaneGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "planegraph {} {}", g.vertex_count(), g.edge_count());
    for (v, nbrs) in g.rotations() {
        let list: Vec<String> = nbrs.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(out, "{v}: {}", list.join(" "));
    }
    let (a, b) = g.outer_dart();
    let _ = writeln!(out, "outer: {a} {b}");
    out
}
