//! Line-oriented text format.
//!
//! ```text
//! # comment
//! planegraph 3
//! v0: 1 2
//! v1: 2 0
//! v2: 0 1
//! label v0 a1
//! outer 0 1
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{Dart, GraphError, PlaneGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Validation(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Accepts `7` or `v7`.
fn parse_index(tok: &str, line: usize) -> Result<VertexId, ParseError> {
    let digits = tok.strip_prefix('v').unwrap_or(tok);
    digits
        .parse()
        .map_err(|_| syntax(line, format!("expected a vertex index, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut rotations: Vec<Option<Vec<VertexId>>> = Vec::new();
    let mut labels = Vec::new();
    let mut outer = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(count) = n else {
            let mut toks = content.split_whitespace();
            if toks.next() != Some("planegraph") {
                return Err(syntax(line, "expected header `planegraph <n>`"));
            }
            let count = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(line, "header is missing the vertex count"))?;
            if toks.next().is_some() {
                return Err(syntax(line, "trailing tokens after header"));
            }
            n = Some(count);
            rotations = vec![None; count];
            continue;
        };

        if let Some(rest) = content.strip_prefix("label ") {
            let rest = rest.trim_start();
            let (vtok, label) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax(line, "expected `label v<i> <string>`"))?;
            let v = parse_index(vtok, line)?;
            if v >= count {
                return Err(syntax(line, format!("label for unknown vertex {v}")));
            }
            labels.push((v, label.trim().to_string()));
        } else if let Some(rest) = content.strip_prefix("outer ") {
            let toks: Vec<_> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(syntax(line, "expected `outer <tail> <head>`"));
            }
            if outer.is_some() {
                return Err(syntax(line, "outer face designated twice"));
            }
            outer = Some(Dart::new(
                parse_index(toks[0], line)?,
                parse_index(toks[1], line)?,
            ));
        } else if let Some((head, tail)) = content.split_once(':') {
            let head = head.trim();
            if !head.starts_with('v') {
                return Err(syntax(line, format!("expected `v<i>:`, found `{head}:`")));
            }
            let v = parse_index(head, line)?;
            if v >= count {
                return Err(syntax(line, format!("vertex v{v} out of range (n = {count})")));
            }
            if rotations[v].is_some() {
                return Err(syntax(line, format!("rotation for v{v} given twice")));
            }
            let rot = tail
                .split_whitespace()
                .map(|t| parse_index(t, line))
                .collect::<Result<Vec<_>, _>>()?;
            rotations[v] = Some(rot);
        } else {
            return Err(syntax(line, format!("unrecognized line `{content}`")));
        }
    }

    let Some(count) = n else {
        return Err(syntax(0, "missing header `planegraph <n>`"));
    };
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, format!("no rotation line for v{v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut g = PlaneGraph::new(count, rotations)?.with_labels(labels)?;
    if let Some(d) = outer {
        g = g.with_outer(d)?;
    }
    Ok(g)
}

pub fn serialize_graph(g: &PlaneGraph) -> String {
    let mut out = String::new();
    writeln!(out, "planegraph {}", g.num_vertices()).unwrap();
    for (v, rot) in g.rotations().iter().enumerate() {
        write!(out, "v{v}:").unwrap();
        for u in rot {
            write!(out, " {u}").unwrap();
        }
        out.push('\n');
    }
    for (v, label) in g.labels().iter().enumerate() {
        if let Some(l) = label {
            writeln!(out, "label v{v} {l}").unwrap();
        }
    }
    if let Some(d) = g.outer_dart() {
        writeln!(out, "outer {} {}", d.tail, d.head).unwrap();
    }
    out
}
