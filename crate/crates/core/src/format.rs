//! Text formats: graph6 (one graph per line, optional `>>graph6<<` header)
//! and a plain edge list (`n m` followed by `m` lines `u v`, 0-indexed).
//!
//! The two are told apart by the first byte: edge lists start with a digit,
//! graph6 lines never do.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::MAX_VERTICES;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("graph order {0} exceeds the supported maximum of 64 vertices")]
    TooManyVertices(usize),
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("expected exactly one graph, found {0}")]
    NotSingle(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

pub fn detect(text: &str) -> Option<GraphFormat> {
    let first = text.trim_start().bytes().next()?;
    if first.is_ascii_digit() {
        Some(GraphFormat::EdgeList)
    } else {
        Some(GraphFormat::Graph6)
    }
}

/// Parses exactly one graph in either format.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut graphs = parse_graphs(text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().expect("length checked")),
        k => Err(FormatError::NotSingle(k)),
    }
}

/// Parses a graph6 file (any number of lines) or a single edge list.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>, FormatError> {
    match detect(text).ok_or(FormatError::Empty)? {
        GraphFormat::EdgeList => Ok(vec![parse_edge_list(text)?]),
        GraphFormat::Graph6 => {
            let mut out = Vec::new();
            for (i, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() {
                    continue;
                }
                out.push(parse_graph6_line(line, i + 1)?);
            }
            if out.is_empty() {
                return Err(FormatError::Empty);
            }
            Ok(out)
        }
    }
}

pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    parse_graph6_line(line.trim(), 1)
}

fn parse_graph6_line(line: &str, lineno: usize) -> Result<Graph, FormatError> {
    let body = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line).as_bytes();
    let bad = |message: &str| FormatError::Malformed {
        line: lineno,
        message: message.to_string(),
    };
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte {b:#04x} outside the graph6 range")));
    }
    let (n, rest) = match body {
        [] => return Err(bad("missing order byte")),
        [126, 126, ..] => {
            if body.len() < 8 {
                return Err(bad("truncated order field"));
            }
            let n = body[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &body[8..])
        }
        [126, ..] => {
            if body.len() < 4 {
                return Err(bad("truncated order field"));
            }
            let n = body[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &body[4..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(FormatError::TooManyVertices(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} adjacency bytes for {n} vertices, found {}",
            bits.div_ceil(6),
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..rest.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits"));
    }
    let mut g = Graph::empty(n).map_err(|_| FormatError::TooManyVertices(n))?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Standard graph6 encoding without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or(FormatError::Empty)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(FormatError::MalformedHeader(header.to_string())),
        },
        _ => return Err(FormatError::MalformedHeader(header.to_string())),
    };
    if n > MAX_VERTICES {
        return Err(FormatError::TooManyVertices(n));
    }
    let mut g = Graph::empty(n).map_err(|_| FormatError::TooManyVertices(n))?;
    let mut seen = 0;
    for (lineno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (u, v) = match parts.as_slice() {
            [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
                (Ok(u), Ok(v)) => (u, v),
                _ => {
                    return Err(FormatError::Malformed {
                        line: lineno,
                        message: format!("expected two vertex ids, found {line:?}"),
                    })
                }
            },
            _ => {
                return Err(FormatError::Malformed {
                    line: lineno,
                    message: format!("expected two vertex ids, found {line:?}"),
                })
            }
        };
        g.add_edge(u, v).map_err(|e| match e {
            GraphError::VertexOutOfRange { vertex, n } => FormatError::VertexOutOfRange {
                line: lineno,
                vertex,
                n,
            },
            GraphError::SelfLoop(vertex) => FormatError::SelfLoop { line: lineno, vertex },
            other => FormatError::Malformed {
                line: lineno,
                message: other.to_string(),
            },
        })?;
        seen += 1;
    }
    if seen != m {
        return Err(FormatError::MalformedHeader(format!(
            "header declares {m} edges but {seen} were listed"
        )));
    }
    Ok(g)
}

/// Canonical edge list: header then edges in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
