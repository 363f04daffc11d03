//! Spanning paths under minimum-degree conditions, the bipartite path
//! extension, and vertex-disjoint paths between vertex sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{validate_cycle, CycleDefect, Deadline, Timeout};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
    pub order: usize,
    pub length: usize,
    pub endpoints: (usize, usize),
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        let order = vertices.len();
        let endpoints = (
            *vertices.first().expect("paths are nonempty"),
            *vertices.last().expect("paths are nonempty"),
        );
        PathWitness {
            order,
            length: order - 1,
            endpoints,
            vertices,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PathDefect {
    #[error("empty vertex sequence")]
    Empty,
    #[error("vertex {0} is not in the graph")]
    OutOfRange(usize),
    #[error("vertex {0} repeats")]
    Repeated(usize),
    #[error("{0} and {1} are consecutive but not adjacent")]
    NotAdjacent(usize, usize),
    #[error("recorded order/length/endpoints disagree with the vertex sequence")]
    Inconsistent,
}

/// Independent re-check of a path against the adjacency of `g`.
pub fn validate_path(g: &Graph, p: &PathWitness) -> Result<(), PathDefect> {
    let vs = &p.vertices;
    if vs.is_empty() {
        return Err(PathDefect::Empty);
    }
    let mut seen = VertexSet::EMPTY;
    for &v in vs {
        if v >= g.n() {
            return Err(PathDefect::OutOfRange(v));
        }
        if seen.contains(v) {
            return Err(PathDefect::Repeated(v));
        }
        seen.insert(v);
    }
    for w in vs.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(PathDefect::NotAdjacent(w[0], w[1]));
        }
    }
    if p.order != vs.len() || p.length + 1 != p.order || p.endpoints != (vs[0], vs[vs.len() - 1]) {
        return Err(PathDefect::Inconsistent);
    }
    Ok(())
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("endpoints coincide")]
    SameEndpoints,
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no path of the requested kind exists (hypothesis holds: {hypothesis_holds})")]
    NoSuchPath { hypothesis_holds: bool },
    #[error("length {t} has the wrong parity for the endpoint classes")]
    ParityMismatch { t: usize },
    #[error("length {t} outside the admissible interval [{lo}, {hi}]")]
    OutOfInterval { t: usize, lo: usize, hi: usize },
    #[error("extension step failed at length {length}; the constructive argument should not stall here")]
    ExtensionFailed { length: usize },
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMethod {
    RotationExtension,
    ExactSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianPath {
    pub path: PathWitness,
    /// Whether `δ(G) > n/2` holds on this instance.
    pub hypothesis_holds: bool,
    pub method: PathMethod,
}

fn check_endpoints(g: &Graph, x: usize, y: usize) -> Result<(), PathError> {
    for v in [x, y] {
        if v >= g.n() {
            return Err(PathError::VertexOutOfRange(v));
        }
    }
    if x == y {
        return Err(PathError::SameEndpoints);
    }
    Ok(())
}

/// A spanning path from `x` to `y`.
///
/// Greedy extension with rotations at the free end is tried first; if it
/// stalls, an exact search decides the question, so the answer is exact
/// whether or not `δ(G) > n/2` holds.
pub fn hamiltonian_path_between(g: &Graph, x: usize, y: usize) -> Result<HamiltonianPath, PathError> {
    hamiltonian_path_between_within(g, x, y, &Deadline::NONE)
}

pub fn hamiltonian_path_between_within(
    g: &Graph,
    x: usize,
    y: usize,
    deadline: &Deadline,
) -> Result<HamiltonianPath, PathError> {
    check_endpoints(g, x, y)?;
    let hypothesis_holds = 2 * g.min_degree() > g.n();
    if let Some(p) = rotation_extension(g, x, y) {
        return Ok(HamiltonianPath {
            path: PathWitness::new(p),
            hypothesis_holds,
            method: PathMethod::RotationExtension,
        });
    }
    match exact_spanning_path(g, x, y, deadline)? {
        Some(p) => Ok(HamiltonianPath {
            path: PathWitness::new(p),
            hypothesis_holds,
            method: PathMethod::ExactSearch,
        }),
        None => Err(PathError::NoSuchPath { hypothesis_holds }),
    }
}

/// Builds a path from `x` over `V - {y}` by extension and rotation at the
/// free end, then closes it at `y`.
fn rotation_extension(g: &Graph, x: usize, y: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let target = g.vertices().without(y);
    let mut path = vec![x];
    let mut on_path = VertexSet::singleton(x);
    let budget = 4 * n * n;
    let mut rotations = 0usize;
    loop {
        let end = *path.last().expect("nonempty");
        if let Some(w) = (g.neighbors(end) & (target - on_path)).min() {
            path.push(w);
            on_path.insert(w);
            continue;
        }
        if on_path == target && g.has_edge(end, y) {
            path.push(y);
            return Some(path);
        }
        if rotations >= budget {
            return None;
        }
        // Rotation: for p_i adjacent to the end (p_i not the predecessor),
        // reverse the segment after p_i so that p_{i+1} becomes the end.
        let len = path.len();
        let pivots: Vec<usize> = (0..len.saturating_sub(2))
            .filter(|&i| g.has_edge(path[i], end))
            .collect();
        if pivots.is_empty() {
            return None;
        }
        // Prefer a rotation whose new end has a way forward or closes at y;
        // otherwise cycle through the pivots deterministically.
        let choice = pivots
            .iter()
            .copied()
            .find(|&i| {
                let new_end = path[i + 1];
                !(g.neighbors(new_end) & (target - on_path)).is_empty() || (on_path == target && g.has_edge(new_end, y))
            })
            .unwrap_or(pivots[rotations % pivots.len()]);
        path[choice + 1..].reverse();
        rotations += 1;
    }
}

/// Exact search for a spanning `x`–`y` path.
pub fn exact_spanning_path(g: &Graph, x: usize, y: usize, deadline: &Deadline) -> Result<Option<Vec<usize>>, Timeout> {
    let mut st = SpanSearch {
        g,
        y,
        all: g.vertices(),
        path: vec![x],
        ticks: 0,
        deadline,
        timed_out: false,
    };
    let found = st.dfs(VertexSet::singleton(x));
    if st.timed_out {
        return Err(Timeout);
    }
    Ok(found.then_some(st.path))
}

struct SpanSearch<'a> {
    g: &'a Graph,
    y: usize,
    all: VertexSet,
    path: Vec<usize>,
    ticks: u32,
    deadline: &'a Deadline,
    timed_out: bool,
}

impl SpanSearch<'_> {
    fn dfs(&mut self, visited: VertexSet) -> bool {
        self.ticks += 1;
        if self.ticks >= 1 << 12 {
            self.ticks = 0;
            if self.deadline.expired() {
                self.timed_out = true;
            }
        }
        if self.timed_out {
            return false;
        }
        let v = *self.path.last().expect("nonempty");
        let rest = self.all - visited;
        if rest == VertexSet::singleton(self.y) {
            if self.g.has_edge(v, self.y) {
                self.path.push(self.y);
                return true;
            }
            return false;
        }
        // The unvisited vertices must stay connected to the end of the path.
        if self.g.reachable_within(v, rest.with(v)) != rest.with(v) {
            return false;
        }
        // A vertex other than y with at most one remaining neighbour must be
        // entered last, which only y may be.
        for w in self.g.neighbors(v) & rest.without(self.y) {
            self.path.push(w);
            if self.dfs(visited.with(w)) {
                return true;
            }
            self.path.pop();
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearSpanningPaths {
    pub spanning: PathWitness,
    pub near_spanning: PathWitness,
    /// The vertex left out of the shorter path.
    pub removed: usize,
}

/// Paths of order `n` and `n-1` between `x` and `y` when `δ(G) ≥ n/2 + 1`.
/// The shorter one avoids `w`, the smallest vertex other than `x` and `y`.
pub fn near_spanning_paths(g: &Graph, x: usize, y: usize) -> Result<NearSpanningPaths, PathError> {
    check_endpoints(g, x, y)?;
    let n = g.n();
    let delta = g.min_degree();
    if 2 * delta < n + 2 {
        return Err(PathError::HypothesisViolated(format!(
            "minimum degree {delta} is below n/2 + 1 = {}",
            n as f64 / 2.0 + 1.0
        )));
    }
    let spanning = hamiltonian_path_between(g, x, y)?.path;
    let w = (g.vertices().without(x).without(y))
        .min()
        .expect("n ≥ 4 is forced by the degree condition");
    let h = g.remove_vertices(VertexSet::singleton(w)).expect("w is a vertex");
    let lx = h.local_index(x).expect("x survives");
    let ly = h.local_index(y).expect("y survives");
    let local = hamiltonian_path_between(&h, lx, ly)?.path;
    let near_spanning = PathWitness::new(h.to_host_seq(&local.vertices));
    Ok(NearSpanningPaths {
        spanning,
        near_spanning,
        removed: w,
    })
}

/// Classes and interval data for the bipartite extension lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSetting {
    /// The smaller class.
    pub a: VertexSet,
    pub b: VertexSet,
    pub delta: usize,
    /// `2(2δ - |A| - 1)`, possibly negative.
    pub top: i64,
}

fn bipartite_setting(g: &Graph) -> Result<BipartiteSetting, PathError> {
    let parts = g
        .bipartition()
        .ok_or_else(|| PathError::HypothesisViolated("graph is not bipartite".into()))?;
    let (a, b) = (parts.smaller, parts.larger);
    let delta = g.min_degree();
    if 2 * delta < b.len() + 2 {
        return Err(PathError::HypothesisViolated(format!(
            "minimum degree {delta} is below |B|/2 + 1 with |B| = {}",
            b.len()
        )));
    }
    let top = 2 * (2 * delta as i64 - a.len() as i64 - 1);
    Ok(BipartiteSetting { a, b, delta, top })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePath {
    pub path: PathWitness,
    pub setting: BipartiteSetting,
    /// Length after the base step and after each splice.
    pub trace: Vec<usize>,
}

/// An `x`–`y` path of length exactly `t` in a bipartite graph with
/// `δ ≥ |B|/2 + 1`, built by the base step and repeated two-vertex splices.
///
/// Same-class endpoints admit even `t ∈ [2, L]`, cross-class endpoints odd
/// `t ∈ [3, L]`, where `L = 2(2δ - |A| - 1)`; for odd `t` the effective top
/// is the largest odd value not above `L`.
pub fn bipartite_xy_path(g: &Graph, x: usize, y: usize, t: usize) -> Result<BipartitePath, PathError> {
    check_endpoints(g, x, y)?;
    let setting = bipartite_setting(g)?;
    let same_class = setting.a.contains(x) == setting.a.contains(y);
    if same_class != t.is_multiple_of(2) {
        return Err(PathError::ParityMismatch { t });
    }
    let lo = if same_class { 2 } else { 3 };
    let hi = if setting.top < lo as i64 {
        0
    } else if same_class {
        setting.top as usize
    } else {
        let top = setting.top as usize;
        if top % 2 == 1 {
            top
        } else {
            top - 1
        }
    };
    if t < lo || t > hi {
        return Err(PathError::OutOfInterval {
            t,
            lo,
            hi: setting.top.max(0) as usize,
        });
    }
    // The cross case is built from the endpoint in A.
    let (from, to, flip) = if !same_class && setting.b.contains(x) {
        (y, x, true)
    } else {
        (x, y, false)
    };
    let mut path = base_path(g, from, to, same_class)?;
    let mut trace = vec![path.len() - 1];
    while path.len() - 1 < t {
        splice(g, &setting, &mut path)?;
        trace.push(path.len() - 1);
    }
    if flip {
        path.reverse();
    }
    Ok(BipartitePath {
        path: PathWitness::new(path),
        setting,
        trace,
    })
}

fn base_path(g: &Graph, x: usize, y: usize, same_class: bool) -> Result<Vec<usize>, PathError> {
    if same_class {
        let u = (g.neighbors(x) & g.neighbors(y))
            .min()
            .ok_or(PathError::ExtensionFailed { length: 2 })?;
        return Ok(vec![x, u, y]);
    }
    let u1 = g
        .neighbors(x)
        .without(y)
        .min()
        .ok_or(PathError::ExtensionFailed { length: 3 })?;
    let u2 = (g.neighbors(u1) & g.neighbors(y))
        .without(x)
        .min()
        .ok_or(PathError::ExtensionFailed { length: 3 })?;
    Ok(vec![x, u1, u2, y])
}

/// Replaces a consecutive pair `u_i ∈ A, u_{i+1} ∈ B` by
/// `u_i, v, w, u_{i+1}` with `v, w` off the path. Ties go to the smallest
/// index, then the smallest `v`, then the smallest `w`.
fn splice(g: &Graph, s: &BipartiteSetting, path: &mut Vec<usize>) -> Result<(), PathError> {
    let on: VertexSet = path.iter().copied().collect();
    for i in 0..path.len() - 1 {
        let (ui, uj) = (path[i], path[i + 1]);
        if !(s.a.contains(ui) && s.b.contains(uj)) {
            continue;
        }
        for v in g.neighbors(ui) - on {
            if let Some(w) = (g.neighbors(uj) & (g.neighbors(v) - on)).min() {
                path.splice(i + 1..i + 1, [v, w]);
                return Ok(());
            }
        }
    }
    Err(PathError::ExtensionFailed { length: path.len() - 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCycle {
    pub cycle: Vec<usize>,
    pub path: BipartitePath,
}

/// A cycle of even length `t ∈ [4, L]`: an odd path of length `t - 1`
/// between adjacent `x ∈ A` and `y ∈ B`, closed by the edge `xy`.
pub fn bipartite_even_cycles(g: &Graph, t: usize) -> Result<BipartiteCycle, PathError> {
    let setting = bipartite_setting(g)?;
    if t % 2 == 1 {
        return Err(PathError::ParityMismatch { t });
    }
    if t < 4 || setting.top < 4 || t as i64 > setting.top {
        return Err(PathError::OutOfInterval {
            t,
            lo: 4,
            hi: setting.top.max(0) as usize,
        });
    }
    let x = setting.a.min().expect("A is nonempty under the degree condition");
    let y = g.neighbors(x).min().expect("δ ≥ 2");
    let path = bipartite_xy_path(g, x, y, t - 1)?;
    let cycle = path.path.vertices.clone();
    debug_assert!(validate_cycle(g, &cycle).is_ok());
    Ok(BipartiteCycle { cycle, path })
}

/// Re-checks a cycle witness produced by [`bipartite_even_cycles`].
pub fn validate_bipartite_cycle(g: &Graph, c: &BipartiteCycle, t: usize) -> Result<(), CycleDefect> {
    validate_cycle(g, &c.cycle)?;
    if c.cycle.len() != t {
        return Err(CycleDefect::TooShort(c.cycle.len()));
    }
    Ok(())
}

/// Up to `k` vertex-disjoint paths from `from` to `to` (unit vertex
/// capacities, augmenting paths in BFS order). Each returned path meets
/// `from` only in its first vertex and `to` only in its last.
pub fn disjoint_paths_between(g: &Graph, from: VertexSet, to: VertexSet, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    // Split node v into v_in = 2v and v_out = 2v+1; source 2n, sink 2n+1.
    let nodes = 2 * n + 2;
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut cap = vec![vec![0i32; nodes]; nodes];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = 1;
        for w in g.neighbors(v) {
            cap[2 * v + 1][2 * w] = 1;
        }
    }
    for v in from {
        cap[src][2 * v] = 1;
    }
    for v in to {
        cap[2 * v + 1][sink] = 1;
    }
    let mut flow = vec![vec![0i32; nodes]; nodes];
    let mut count = 0;
    while count < k {
        let mut prev = vec![usize::MAX; nodes];
        prev[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for w in 0..nodes {
                if prev[w] == usize::MAX && cap[u][w] - flow[u][w] > 0 {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut w = sink;
        while w != src {
            let u = prev[w];
            flow[u][w] += 1;
            flow[w][u] -= 1;
            w = u;
        }
        count += 1;
    }
    // Decompose the flow into vertex sequences.
    let mut paths = Vec::new();
    for start in from {
        if flow[src][2 * start] <= 0 {
            continue;
        }
        let mut seq = vec![start];
        let mut v = start;
        loop {
            if flow[2 * v + 1][sink] > 0 {
                break;
            }
            let next = g
                .neighbors(v)
                .iter()
                .find(|&w| flow[2 * v + 1][2 * w] > 0)
                .expect("flow is conserved");
            flow[2 * v + 1][2 * next] -= 1;
            seq.push(next);
            v = next;
        }
        // Trim so the path leaves `from` once and enters `to` once.
        let last_from = seq.iter().rposition(|&u| from.contains(u)).expect("starts in from");
        let seq = seq[last_from..].to_vec();
        let first_to = seq.iter().position(|&u| to.contains(u)).expect("ends in to");
        paths.push(seq[..=first_to].to_vec());
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn hamiltonian_path_examples() {
        let k5 = named::complete(5);
        let p = hamiltonian_path_between(&k5, 0, 3).unwrap();
        assert_eq!(p.path.order, 5);
        assert_eq!(p.path.endpoints, (0, 3));
        validate_path(&k5, &p.path).unwrap();
        assert!(p.hypothesis_holds);

        let c4 = named::cycle(4);
        let p = hamiltonian_path_between(&c4, 0, 1).unwrap();
        assert!(!p.hypothesis_holds);
        assert_eq!(p.path.vertices, vec![0, 3, 2, 1]);

        let g = named::complete_minus_matching(7, 3);
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    let p = hamiltonian_path_between(&g, x, y).unwrap();
                    validate_path(&g, &p.path).unwrap();
                    assert_eq!(p.path.order, 7);
                }
            }
        }
        assert_eq!(
            hamiltonian_path_between(&named::path(4), 1, 2),
            Err(PathError::NoSuchPath {
                hypothesis_holds: false
            })
        );
        assert_eq!(hamiltonian_path_between(&k5, 2, 2), Err(PathError::SameEndpoints));
    }

    #[test]
    fn near_spanning_examples() {
        let k6 = named::complete(6);
        let r = near_spanning_paths(&k6, 0, 5).unwrap();
        assert_eq!((r.spanning.order, r.near_spanning.order), (6, 5));
        assert_eq!(r.removed, 1);
        assert!(!r.near_spanning.vertices.contains(&1));

        let mut g = named::complete(6);
        g.remove_edge(2, 3).unwrap();
        let r = near_spanning_paths(&g, 0, 1).unwrap();
        validate_path(&g, &r.spanning).unwrap();
        validate_path(&g, &r.near_spanning).unwrap();
        assert!(matches!(
            near_spanning_paths(&named::cycle(5), 0, 2),
            Err(PathError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn bipartite_path_examples() {
        let k34 = named::complete_bipartite(3, 4);
        let p = bipartite_xy_path(&k34, 0, 1, 4).unwrap();
        assert_eq!(p.path.length, 4);
        validate_path(&k34, &p.path).unwrap();
        assert_eq!(p.trace, vec![2, 4]);
        let p = bipartite_xy_path(&k34, 0, 3, 3).unwrap();
        assert_eq!(p.path.length, 3);
        validate_path(&k34, &p.path).unwrap();
        let p = bipartite_xy_path(&k34, 3, 0, 3).unwrap();
        assert_eq!(p.path.endpoints, (3, 0));
        assert_eq!(
            bipartite_xy_path(&k34, 0, 1, 3),
            Err(PathError::ParityMismatch { t: 3 })
        );
        assert_eq!(
            bipartite_xy_path(&k34, 0, 1, 6),
            Err(PathError::OutOfInterval { t: 6, lo: 2, hi: 4 })
        );
    }

    #[test]
    fn bipartite_cycle_examples() {
        let c = bipartite_even_cycles(&named::complete_bipartite(3, 4), 4).unwrap();
        validate_bipartite_cycle(&named::complete_bipartite(3, 4), &c, 4).unwrap();
        assert_eq!(
            bipartite_even_cycles(&named::crown(4), 2),
            Err(PathError::OutOfInterval { t: 2, lo: 4, hi: 2 })
        );
        let k55 = named::complete_bipartite(5, 5);
        let c = bipartite_even_cycles(&k55, 8).unwrap();
        validate_bipartite_cycle(&k55, &c, 8).unwrap();
    }

    #[test]
    fn disjoint_paths_across_a_cut() {
        let bowtie = named::cliques_sharing_vertex(3, 3);
        let a: VertexSet = [0, 1].into_iter().collect();
        let b: VertexSet = [3, 4].into_iter().collect();
        assert_eq!(disjoint_paths_between(&bowtie, a, b, 2).len(), 1);
        let c6 = named::cycle(6);
        let a: VertexSet = [0, 1].into_iter().collect();
        let b: VertexSet = [3, 4].into_iter().collect();
        let ps = disjoint_paths_between(&c6, a, b, 2);
        assert_eq!(ps.len(), 2);
        let mut used = VertexSet::EMPTY;
        for p in &ps {
            for &v in p {
                assert!(!used.contains(v));
                used.insert(v);
            }
            assert!(a.contains(p[0]) && b.contains(*p.last().unwrap()));
        }
    }
}
