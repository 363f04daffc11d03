//! Red/blue edge colourings of a host graph and their text format.
//!
//! File format: a first line `p`, then one line `u v c` per vertex pair with
//! `c` one of `R`, `B`, or `Y`. `Y` marks a pair that is not an edge of the
//! host; every pair must be listed exactly once, so completeness of the host
//! is checked on load rather than assumed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("colour classes differ in order from the host")]
    OrderMismatch,
    #[error("edge ({0}, {1}) is coloured both red and blue")]
    Overlap(usize, usize),
    #[error("edge ({0}, {1}) is coloured but not in the host")]
    NotInHost(usize, usize),
    #[error("host edge ({0}, {1}) is uncoloured")]
    Uncolored(usize, usize),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("pair ({0}, {1}) listed more than once")]
    Duplicate(usize, usize),
    #[error("pair ({0}, {1}) missing from the colouring file")]
    MissingPair(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A host graph whose edges are split into a red and a blue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoring {
    host: Graph,
    red: Graph,
    blue: Graph,
}

impl TwoColoring {
    pub fn new(host: Graph, red: Graph, blue: Graph) -> Result<Self, ColoringError> {
        if red.n() != host.n() || blue.n() != host.n() {
            return Err(ColoringError::OrderMismatch);
        }
        for (u, v) in red.edges() {
            if blue.has_edge(u, v) {
                return Err(ColoringError::Overlap(u, v));
            }
            if !host.has_edge(u, v) {
                return Err(ColoringError::NotInHost(u, v));
            }
        }
        for (u, v) in blue.edges() {
            if !host.has_edge(u, v) {
                return Err(ColoringError::NotInHost(u, v));
            }
        }
        for (u, v) in host.edges() {
            if !red.has_edge(u, v) && !blue.has_edge(u, v) {
                return Err(ColoringError::Uncolored(u, v));
            }
        }
        Ok(TwoColoring { host, red, blue })
    }

    /// Colours the given host edges red and every other host edge blue.
    pub fn from_red_edges(host: Graph, red_edges: &[(usize, usize)]) -> Result<Self, ColoringError> {
        let mut red = Graph::empty(host.n())?;
        for &(u, v) in red_edges {
            if !host.has_edge(u, v) {
                return Err(ColoringError::NotInHost(u.min(v), u.max(v)));
            }
            red.add_edge(u, v)?;
        }
        let blue = difference(&host, &red);
        Ok(TwoColoring { host, red, blue })
    }

    /// Colouring of `K_p` with the given red edges.
    pub fn complete_from_red(p: usize, red_edges: &[(usize, usize)]) -> Result<Self, ColoringError> {
        Self::from_red_edges(Graph::complete(p)?, red_edges)
    }

    /// Colouring of `K_p` from a red graph on `p` vertices.
    pub fn complete_from_red_graph(red: Graph) -> Result<Self, ColoringError> {
        let host = Graph::complete(red.n())?;
        let blue = red.complement();
        Ok(TwoColoring { host, red, blue })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn red(&self) -> &Graph {
        &self.red
    }

    pub fn blue(&self) -> &Graph {
        &self.blue
    }

    pub fn class(&self, c: Color) -> &Graph {
        match c {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<Color> {
        if self.red.has_edge(u, v) {
            Some(Color::Red)
        } else if self.blue.has_edge(u, v) {
            Some(Color::Blue)
        } else {
            None
        }
    }

    /// The same host with red and blue exchanged.
    pub fn swapped(&self) -> TwoColoring {
        TwoColoring {
            host: self.host.clone(),
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }

    /// Moves edge `(u, v)` into colour `c`.
    pub fn recolor(&mut self, u: usize, v: usize, c: Color) -> Result<(), ColoringError> {
        if !self.host.has_edge(u, v) {
            return Err(ColoringError::NotInHost(u.min(v), u.max(v)));
        }
        match c {
            Color::Red => {
                self.blue.remove_edge(u, v)?;
                self.red.add_edge(u, v)?;
            }
            Color::Blue => {
                self.red.remove_edge(u, v)?;
                self.blue.add_edge(u, v)?;
            }
        }
        Ok(())
    }

    pub fn is_complete_host(&self) -> bool {
        self.host.edge_count() == self.n() * self.n().saturating_sub(1) / 2
    }
}

fn difference(a: &Graph, b: &Graph) -> Graph {
    let rows: Vec<VertexSet> = (0..a.n()).map(|v| a.neighbors(v) - b.neighbors(v)).collect();
    Graph::from_rows(&rows).expect("difference of simple graphs is simple")
}

pub fn parse_coloring(text: &str) -> Result<TwoColoring, ColoringError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, first) = lines.next().ok_or(ColoringError::Malformed {
        line: 1,
        message: "empty input".into(),
    })?;
    let p: usize = first.parse().map_err(|_| ColoringError::Malformed {
        line: lineno,
        message: format!("expected the vertex count, found {first:?}"),
    })?;
    if p > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(p).into());
    }
    let mut host = Graph::empty(p)?;
    let mut red = Graph::empty(p)?;
    let mut seen = vec![VertexSet::EMPTY; p];
    for (lineno, line) in lines {
        let malformed = |message: String| ColoringError::Malformed { line: lineno, message };
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v, c] = parts.as_slice() else {
            return Err(malformed(format!("expected `u v c`, found {line:?}")));
        };
        let u: usize = u.parse().map_err(|_| malformed(format!("bad vertex {u:?}")))?;
        let v: usize = v.parse().map_err(|_| malformed(format!("bad vertex {v:?}")))?;
        if u >= p || v >= p {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: p }.into());
        }
        if u == v {
            return Err(GraphError::SelfLoop(u).into());
        }
        if seen[u].contains(v) {
            return Err(ColoringError::Duplicate(u.min(v), u.max(v)));
        }
        seen[u].insert(v);
        seen[v].insert(u);
        match *c {
            "R" => {
                host.add_edge(u, v)?;
                red.add_edge(u, v)?;
            }
            "B" => host.add_edge(u, v)?,
            "Y" => {}
            other => return Err(malformed(format!("unknown colour {other:?}"))),
        }
    }
    for (u, &s) in seen.iter().enumerate() {
        let missing = (VertexSet::full(p).without(u) - s).above(u);
        if let Some(v) = missing.min() {
            return Err(ColoringError::MissingPair(u, v));
        }
    }
    let blue = difference(&host, &red);
    Ok(TwoColoring { host, red, blue })
}

pub fn to_coloring_text(col: &TwoColoring) -> String {
    let p = col.n();
    let mut out = format!("{p}\n");
    for u in 0..p {
        for v in u + 1..p {
            let c = match col.color_of(u, v) {
                Some(c) => c.letter(),
                None => 'Y',
            };
            out.push_str(&format!("{u} {v} {c}\n"));
        }
    }
    out
}
