//! Dense undirected simple graphs on at most 64 vertices.
//!
//! Row `v` of the adjacency is a [`VertexSet`] holding the neighbours of `v`,
//! so every set operation used by the searches is a word operation.

use thiserror::Error;

use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of 64 vertices")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set is not a subset of the graph's vertices")]
    NotASubset,
    #[error("vertex sets overlap")]
    OverlappingSets,
}

/// An undirected simple graph.
///
/// Induced subgraphs are re-indexed `0..k` but remember the host vertex each
/// index came from (see [`Graph::label`]), so results computed on a subgraph
/// can always be reported in host coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges are collapsed.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = all.without(v);
        }
        Ok(g)
    }

    /// Builds a graph directly from adjacency rows, validating symmetry.
    pub fn from_rows(rows: &[VertexSet]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n);
        for (u, &row) in rows.iter().enumerate() {
            if row.contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            if let Some(v) = (row - all).min() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            g.adj[u] = row;
        }
        for u in 0..n {
            for v in g.adj[u] {
                if !g.adj[v].contains(u) {
                    g.adj[v].insert(u);
                    g.adj[u].insert(v);
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        if s.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(GraphError::NotASubset)
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    /// `Γ(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degree of `v` counting only neighbours inside `within`.
    #[inline]
    pub fn degree_in(&self, v: usize, within: VertexSet) -> usize {
        (self.adj[v] & within).len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// `δ(G)`; zero for the null graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Δ(G)`; zero for the null graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].above(u).iter().map(move |v| (u, v)))
    }

    /// Host vertex id of local vertex `v`.
    #[inline]
    pub fn label(&self, v: usize) -> usize {
        match &self.labels {
            Some(l) => l[v],
            None => v,
        }
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Maps a set of local vertices to host ids.
    pub fn to_host_set(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.label(v)).collect()
    }

    pub fn to_host_seq(&self, seq: &[usize]) -> Vec<usize> {
        seq.iter().map(|&v| self.label(v)).collect()
    }

    /// Local index of host vertex `host`, if present.
    pub fn local_index(&self, host: usize) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|&x| x == host),
            None => (host < self.n).then_some(host),
        }
    }

    /// Drops any host labels, keeping the adjacency.
    pub fn unlabeled(mut self) -> Self {
        self.labels = None;
        self
    }

    /// `Ḡ`.
    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n).map(|v| (all - self.adj[v]).without(v)).collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// `G[s]`, re-indexed in increasing order of the members of `s`.
    pub fn induced(&self, s: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(s)?;
        let members = s.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in members.iter().enumerate() {
            index[v] = i;
        }
        let adj = members
            .iter()
            .map(|&v| (self.adj[v] & s).iter().map(|w| index[w]).collect())
            .collect();
        Ok(Graph {
            n: members.len(),
            adj,
            labels: Some(members.iter().map(|&v| self.label(v)).collect()),
        })
    }

    /// `G - s`.
    pub fn remove_vertices(&self, s: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(s)?;
        self.induced(self.vertices() - s)
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reachable_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= self.adj[v];
            }
            next = (next & within) - seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by minimum vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let comp = self.reachable_within(v, within);
            rest -= comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reachable_within(0, self.vertices()) == self.vertices()
    }

    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.min() {
            None => true,
            Some(v) => self.reachable_within(v, within) == within,
        }
    }

    /// Articulation vertices of every component.
    pub fn cut_vertices(&self) -> VertexSet {
        self.low_link().cut_vertices
    }

    /// Vertex sets of the biconnected components (blocks), ordered by
    /// minimum vertex. Isolated vertices form no block; a bridge is a block
    /// of two vertices.
    pub fn blocks(&self) -> Vec<VertexSet> {
        let mut blocks = self.low_link().blocks;
        blocks.sort();
        blocks.sort_by_key(|b| VertexSet::min(*b));
        blocks
    }

    /// Connected, at least three vertices, and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.cut_vertices().is_empty()
    }

    fn low_link(&self) -> LowLink {
        let mut st = LowLink {
            disc: [u32::MAX; MAX_VERTICES],
            low: [0; MAX_VERTICES],
            timer: 0,
            edge_stack: Vec::new(),
            cut_vertices: VertexSet::EMPTY,
            blocks: Vec::new(),
        };
        for root in 0..self.n {
            if st.disc[root] != u32::MAX {
                continue;
            }
            let children = self.dfs_low_link(root, usize::MAX, &mut st);
            if children >= 2 {
                st.cut_vertices.insert(root);
            }
        }
        st
    }

    // Recursion depth is bounded by the 64-vertex cap.
    fn dfs_low_link(&self, v: usize, parent: usize, st: &mut LowLink) -> usize {
        st.disc[v] = st.timer;
        st.low[v] = st.timer;
        st.timer += 1;
        let mut children = 0;
        for w in self.adj[v] {
            if w == parent {
                continue;
            }
            if st.disc[w] == u32::MAX {
                children += 1;
                st.edge_stack.push((v, w));
                self.dfs_low_link(w, v, st);
                st.low[v] = st.low[v].min(st.low[w]);
                if st.low[w] >= st.disc[v] {
                    if parent != usize::MAX {
                        st.cut_vertices.insert(v);
                    }
                    let mut block = VertexSet::EMPTY;
                    while let Some((a, b)) = st.edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    st.blocks.push(block);
                }
            } else if st.disc[w] < st.disc[v] {
                st.low[v] = st.low[v].min(st.disc[w]);
                st.edge_stack.push((v, w));
            }
        }
        children
    }

    /// Two-colours every component; see [`Bipartition`] for the canonical choice.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side_one = VertexSet::EMPTY;
        let mut side_two = VertexSet::EMPTY;
        for comp in self.components() {
            let root = comp.min().expect("components are nonempty");
            let mut one = VertexSet::singleton(root);
            let mut two = VertexSet::EMPTY;
            let mut frontier = one;
            let mut frontier_is_one = true;
            let mut seen = one;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next |= self.adj[v];
                }
                // A neighbour on the frontier's own side means an odd cycle.
                let own = if frontier_is_one { one } else { two };
                if !(next & own).is_empty() {
                    return None;
                }
                next -= seen;
                if frontier_is_one {
                    two |= next;
                } else {
                    one |= next;
                }
                seen |= next;
                frontier = next;
                frontier_is_one = !frontier_is_one;
            }
            side_one |= one;
            side_two |= two;
        }
        if side_one.len() > side_two.len() {
            std::mem::swap(&mut side_one, &mut side_two);
        }
        Some(Bipartition {
            smaller: side_one,
            larger: side_two,
        })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `s⁽²⁾ ⊆ E(G)`.
    pub fn is_clique(&self, s: VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| (s.without(v)).is_subset(self.adj[v])))
    }

    pub fn is_independent(&self, s: VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| (self.adj[v] & s).is_empty()))
    }

    /// `a × b ⊆ E(G)` for disjoint `a`, `b`.
    pub fn is_complete_bipartite_between(&self, a: VertexSet, b: VertexSet) -> Result<bool, GraphError> {
        self.check_set(a)?;
        self.check_set(b)?;
        if !a.is_disjoint(b) {
            return Err(GraphError::OverlappingSets);
        }
        Ok(a.iter().all(|v| b.is_subset(self.adj[v])))
    }

    /// Edges of `G` with one end in `a` and the other in `b`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in a {
            for v in self.adj[u] & b {
                let e = if u < v { (u, v) } else { (v, u) };
                out.push(e);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of edges with both ends in `s`.
    pub fn edge_count_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| (self.adj[v] & s).len()).sum::<usize>() / 2
    }

    /// Minimum degree of `G[s]`; zero for the empty set.
    pub fn min_degree_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_in(v, s)).min().unwrap_or(0)
    }
}

struct LowLink {
    disc: [u32; MAX_VERTICES],
    low: [u32; MAX_VERTICES],
    timer: u32,
    edge_stack: Vec<(usize, usize)>,
    cut_vertices: VertexSet,
    blocks: Vec<VertexSet>,
}

/// Colour classes of a bipartite graph.
///
/// Each component puts its minimum vertex in the first class; afterwards the
/// classes are swapped if needed so that `smaller` is never the larger one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub smaller: VertexSet,
    pub larger: VertexSet,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn build_and_invariants() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.min_degree(), 2);
        let e4 = Graph::new(4, &[]).unwrap();
        assert_eq!(e4.edge_count(), 0);
        assert_eq!(e4.min_degree(), 0);
        let dup = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
        assert!(Graph::complete(64).is_ok());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = named::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.degree_sequence().iter().all(|&d| d == 3));
    }

    #[test]
    fn complement_cases() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement().edge_count(), 0);
        let p = named::petersen();
        assert_eq!(p.complement().complement(), p);
        let k44 = named::complete_bipartite(4, 4);
        let c = k44.complement();
        assert_eq!(c.edge_count(), 12);
        let comps = c.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|s| s.len() == 4));
    }

    #[test]
    fn induced_cases() {
        let k5 = Graph::complete(5).unwrap();
        let sub = k5.induced(set(&[0, 1, 2])).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 3);
        let c5 = named::cycle(5);
        assert_eq!(c5.induced(set(&[0, 1, 2])).unwrap().edge_count(), 2);
        let p = named::petersen();
        let outer = p.induced(set(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(outer.edge_count(), 5);
        assert!(outer.degree_sequence().iter().all(|&d| d == 2));
        assert!(outer.is_connected());
        // labels compose through nested induced subgraphs
        let inner = p.induced(set(&[5, 6, 7, 8, 9])).unwrap();
        let nested = inner.induced(set(&[1, 3])).unwrap();
        assert_eq!(nested.labels(), Some(&[6, 8][..]));
        assert_eq!(k5.induced(set(&[7])), Err(GraphError::NotASubset));
    }

    #[test]
    fn components_cases() {
        let g = named::disjoint_union(&Graph::complete(3).unwrap(), &Graph::complete(4).unwrap());
        let comps = g.components();
        assert_eq!(comps.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![3, 4]);
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(e3.components().len(), 3);
    }

    #[test]
    fn cut_vertex_cases() {
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(bowtie.cut_vertices(), set(&[2]));
        assert_eq!(bowtie.blocks(), vec![set(&[0, 1, 2]), set(&[2, 3, 4])]);
        assert!(named::cycle(5).cut_vertices().is_empty());
        assert!(named::cycle(5).is_two_connected());
        assert_eq!(named::path(4).cut_vertices(), set(&[1, 2]));
        assert_eq!(named::path(4).blocks().len(), 3);
    }

    #[test]
    fn bipartition_cases() {
        let k34 = named::complete_bipartite(3, 4);
        let b = k34.bipartition().unwrap();
        assert_eq!((b.smaller.len(), b.larger.len()), (3, 4));
        assert!(named::cycle(5).bipartition().is_none());
        let c6 = named::cycle(6).bipartition().unwrap();
        assert_eq!((c6.smaller.len(), c6.larger.len()), (3, 3));
        assert!(c6.smaller.contains(0));
        // disconnected: each component's minimum vertex starts class one,
        // then the classes are swapped so the smaller comes first
        let g = Graph::new(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let b = g.bipartition().unwrap();
        assert_eq!(b.smaller, set(&[1, 3]));
        assert_eq!(b.larger, set(&[0, 2, 4]));
    }

    #[test]
    fn structure_predicates() {
        let k5 = Graph::complete(5).unwrap();
        assert!(k5.is_clique(set(&[0, 2, 4])).unwrap());
        let k33 = named::complete_bipartite(3, 3);
        assert!(k33.is_independent(set(&[0, 1, 2])).unwrap());
        let k34 = named::complete_bipartite(3, 4);
        assert!(k34
            .is_complete_bipartite_between(set(&[0, 1, 2]), set(&[3, 4, 5, 6]))
            .unwrap());
        assert_eq!(
            k34.is_complete_bipartite_between(set(&[0, 1]), set(&[1, 3])),
            Err(GraphError::OverlappingSets)
        );
    }
}
