//! Constructors for standard small graphs used in examples and tests.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("named graph edges are in range")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    build(10, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    Graph::complete(n).expect("order within range")
}

/// `K_{a,b}` with classes `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    build(a + b, &edges)
}

/// Vertex-disjoint union; `h` is shifted past the vertices of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut edges: Vec<_> = g.edges().collect();
    edges.extend(h.edges().map(|(u, v)| (u + off, v + off)));
    build(g.n() + h.n(), &edges)
}

/// `K_a` on `0..a` and `K_b` on `a-1..a+b-1`, sharing vertex `a-1`.
pub fn cliques_sharing_vertex(a: usize, b: usize) -> Graph {
    let n = a + b - 1;
    let mut g = Graph::empty(n).expect("order within range");
    add_clique(&mut g, 0..a);
    add_clique(&mut g, a - 1..n);
    g
}

/// Adds every edge inside `vertices`.
pub fn add_clique(g: &mut Graph, vertices: impl IntoIterator<Item = usize>) {
    let vs: Vec<usize> = vertices.into_iter().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            g.add_edge(u, v).expect("clique vertices in range");
        }
    }
}

/// `K_n` minus a perfect matching on the vertices `0..2m` (pairs `2i, 2i+1`).
pub fn complete_minus_matching(n: usize, m: usize) -> Graph {
    let mut g = complete(n);
    for i in 0..m {
        g.remove_edge(2 * i, 2 * i + 1).expect("matching in range");
    }
    g
}

/// `K_{a,a}` minus the matching `i -- a+i`.
pub fn crown(a: usize) -> Graph {
    let mut g = complete_bipartite(a, a);
    for i in 0..a {
        g.remove_edge(i, a + i).expect("matching in range");
    }
    g
}

/// The set `{lo, ..., hi-1}`.
pub fn range_set(lo: usize, hi: usize) -> VertexSet {
    (lo..hi).collect()
}
