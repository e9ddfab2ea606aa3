//! DIMACS `.col` and plain edge-list text formats.
//!
//! DIMACS uses 1-based vertex ids with a `p edge <n> <m>` header and one
//! `e <u> <v>` line per edge; `c` lines are comments. Edge lists use 0-based
//! `u v` pairs, one per line, with `#` comments; the vertex count is one more
//! than the largest id seen.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: edge before the problem line")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed edge: {msg}")]
    MalformedEdge { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("no problem line found")]
    NoHeader,
}

struct EdgeCollector {
    seen: HashSet<(Vertex, Vertex)>,
    edges: Vec<(Vertex, Vertex)>,
}

impl EdgeCollector {
    fn new() -> Self {
        Self {
            seen: HashSet::new(),
            edges: Vec::new(),
        }
    }

    /// `shown_*` are the ids as they appear in the input, for messages.
    fn push(&mut self, line: usize, u: Vertex, v: Vertex, shown_u: usize, shown_v: usize) -> Result<(), ParseError> {
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: shown_u });
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: shown_u,
                v: shown_v,
            });
        }
        self.edges.push((u, v));
        Ok(())
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::MalformedEdge {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| ParseError::MalformedEdge {
        line,
        msg: format!("{what} {tok:?} is not a non-negative integer"),
    })
}

pub fn read_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut declared = 0;
    let mut edges = EdgeCollector::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(ParseError::MalformedHeader {
                        line,
                        msg: "second problem line".into(),
                    });
                }
                let fmt = toks.next();
                if !matches!(fmt, Some("edge") | Some("col")) {
                    return Err(ParseError::MalformedHeader {
                        line,
                        msg: format!("expected format \"edge\", got {fmt:?}"),
                    });
                }
                let nums: Vec<_> = toks.map(str::parse::<usize>).collect();
                match nums.as_slice() {
                    [Ok(nv), Ok(ne)] => {
                        n = Some(*nv);
                        declared = *ne;
                    }
                    _ => {
                        return Err(ParseError::MalformedHeader {
                            line,
                            msg: "expected \"p edge <vertices> <edges>\"".into(),
                        })
                    }
                }
            }
            Some("e") => {
                let nv = n.ok_or(ParseError::MissingHeader { line })?;
                let u = parse_usize(toks.next(), line, "first endpoint")?;
                let v = parse_usize(toks.next(), line, "second endpoint")?;
                if toks.next().is_some() {
                    return Err(ParseError::MalformedEdge {
                        line,
                        msg: "trailing tokens".into(),
                    });
                }
                for w in [u, v] {
                    if w == 0 || w > nv {
                        return Err(ParseError::VertexOutOfRange { line, vertex: w, n: nv });
                    }
                }
                edges.push(line, u - 1, v - 1, u, v)?;
            }
            Some(other) => {
                return Err(ParseError::MalformedEdge {
                    line,
                    msg: format!("unknown line type {other:?}"),
                })
            }
        }
    }
    let n = n.ok_or(ParseError::NoHeader)?;
    if declared != edges.edges.len() {
        log::warn!("problem line declares {declared} edges, found {}", edges.edges.len());
    }
    Ok(Graph::from_edges(n, edges.edges).expect("validated while parsing"))
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut edges = EdgeCollector::new();
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let u = parse_usize(toks.next(), line, "first endpoint")?;
        let v = parse_usize(toks.next(), line, "second endpoint")?;
        if toks.next().is_some() {
            return Err(ParseError::MalformedEdge {
                line,
                msg: "trailing tokens".into(),
            });
        }
        edges.push(line, u, v, u, v)?;
        n = n.max(u + 1).max(v + 1);
    }
    Ok(Graph::from_edges(n, edges.edges).expect("validated while parsing"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn reads_triangle() {
        let g = read_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, complete(3).unwrap());
    }

    #[test]
    fn round_trip_cycle() {
        let g = cycle(3).unwrap();
        assert_eq!(read_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn self_loop_names_line() {
        let err = read_dimacs("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, vertex: 1 });
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(
            read_dimacs("p edge x 1\n"),
            Err(ParseError::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(read_dimacs("e 1 2\n"), Err(ParseError::MissingHeader { line: 1 })));
        assert!(matches!(
            read_dimacs("p edge 2 1\ne 1 3\n"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 3, n: 2 })
        ));
        assert!(matches!(
            read_dimacs("p edge 2 1\ne 0 1\n"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 0, .. })
        ));
        assert!(matches!(
            read_dimacs("p edge 3 2\ne 1 2\n\ne 2 1\n"),
            Err(ParseError::DuplicateEdge { line: 4, u: 2, v: 1 })
        ));
        assert_eq!(read_dimacs("c nothing\n"), Err(ParseError::NoHeader));
    }

    #[test]
    fn edge_list() {
        let g = read_edge_list("# square\n0 1\n1 2\n2 3\n3 0 # closing\n").unwrap();
        assert_eq!(g, cycle(4).unwrap());
        assert_eq!(read_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert!(matches!(read_edge_list("0 0\n"), Err(ParseError::SelfLoop { line: 1, .. })));
        assert!(matches!(read_edge_list("0\n"), Err(ParseError::MalformedEdge { line: 1, .. })));
    }
}
