//! Line-oriented graph files:
//!
//! ```text
//! # comment
//! graph <n> <delta>
//! e <u> <v> <d>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, ParseErrorKind, Result};
use crate::space::graph::LabelledGraph;

fn err(line: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, kind }
}

fn numbers<T: std::str::FromStr>(line: usize, raw: &str, fields: &[&str]) -> Result<Vec<T>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<T>()
                .map_err(|_| err(line, ParseErrorKind::Malformed(raw.to_owned())))
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<LabelledGraph> {
    let mut graph: Option<LabelledGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match (fields[0], &mut graph) {
            ("graph", None) if fields.len() == 3 => {
                let n: usize = numbers(line, raw, &fields[1..2])?[0];
                let delta: u32 = numbers(line, raw, &fields[2..3])?[0];
                if delta == 0 {
                    return Err(err(line, ParseErrorKind::Malformed(raw.to_owned())));
                }
                graph = Some(LabelledGraph::empty(n, delta));
            }
            ("e", Some(g)) if fields.len() == 4 => {
                let uv: Vec<usize> = numbers(line, raw, &fields[1..3])?;
                let d: u32 = numbers(line, raw, &fields[3..4])?[0];
                let (u, v) = (uv[0], uv[1]);
                if u == v {
                    return Err(err(line, ParseErrorKind::Loop(u)));
                }
                for vertex in [u, v] {
                    if vertex >= g.n() {
                        return Err(err(
                            line,
                            ParseErrorKind::VertexOutOfRange { vertex, n: g.n() },
                        ));
                    }
                }
                if d == 0 || d > g.delta() {
                    return Err(err(
                        line,
                        ParseErrorKind::DistanceOutOfRange {
                            distance: d,
                            delta: g.delta(),
                        },
                    ));
                }
                if g.is_edge(u, v) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge(u.min(v), u.max(v))));
                }
                g.put(u, v, d);
            }
            ("e", None) => return Err(err(line, ParseErrorKind::MissingHeader)),
            _ => return Err(err(line, ParseErrorKind::Malformed(raw.to_owned()))),
        }
    }
    graph.ok_or_else(|| err(0, ParseErrorKind::MissingHeader))
}

/// Header line, then one `e u v d` line per edge sorted by `(u, v)`.
pub fn serialize_graph(g: &LabelledGraph) -> String {
    let mut out = format!("graph {} {}\n", g.n(), g.delta());
    for (u, v, d) in g.edges() {
        writeln!(out, "e {u} {v} {d}").expect("writing to a String");
    }
    out
}
