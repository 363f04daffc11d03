//! Slow, obviously-correct reference computations. Everything here reads a
//! graph through `n`, `has_edge` and nothing else, so it shares no search
//! code with the library it checks.

use std::collections::BTreeSet;

use cyclestab_core::Graph;

/// Every cycle length of `g`, by walking all simple paths from every start
/// and closing them back to it.
pub fn naive_cycle_lengths(g: &Graph) -> BTreeSet<usize> {
    let n = g.n();
    let mut out = BTreeSet::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        walk(g, s, s, 1, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

fn walk(g: &Graph, s: usize, v: usize, len: usize, on_path: &mut [bool], out: &mut BTreeSet<usize>) {
    for w in 0..g.n() {
        if !g.has_edge(v, w) {
            continue;
        }
        if w == s && len >= 3 {
            out.insert(len);
        }
        // only paths whose vertices all exceed the start
        if w > s && !on_path[w] {
            on_path[w] = true;
            walk(g, s, w, len + 1, on_path, out);
            on_path[w] = false;
        }
    }
}

/// Longest cycle length, 0 for forests.
pub fn naive_circumference(g: &Graph) -> usize {
    naive_cycle_lengths(g).last().copied().unwrap_or(0)
}

/// Cycle lengths up to `max_len` from an adjacency-row table, by dynamic
/// programming over vertex subsets: `reach[S]` is the set of ends of paths
/// that start at `min S` and visit exactly `S`.
pub fn subset_cycle_lengths(rows: &[u64], max_len: usize) -> BTreeSet<usize> {
    let n = rows.len();
    assert!(n <= 20, "subset table too large");
    let mut out = BTreeSet::new();
    let mut reach = vec![0u64; 1 << n];
    for s in 0..n {
        // sets with minimum s, indexed by their part above s
        let above = n - s - 1;
        reach[..1 << above].iter_mut().for_each(|r| *r = 0);
        reach[0] = 1 << s;
        for sub in 0usize..1 << above {
            let mut ends = reach[sub];
            if ends == 0 {
                continue;
            }
            let set = (sub as u64) << (s + 1) | 1 << s;
            let size = set.count_ones() as usize;
            while ends != 0 {
                let v = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                if size >= 3 && size <= max_len && rows[v] >> s & 1 == 1 {
                    out.insert(size);
                }
                if size >= max_len {
                    continue;
                }
                let mut next = rows[v] & !set & (!0u64 << (s + 1));
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    reach[sub | 1 << (w - s - 1)] |= 1 << w;
                }
            }
        }
    }
    out
}

/// Adjacency rows of `g` as plain bit masks, built from `has_edge`.
pub fn rows_of(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|u| {
            (0..g.n())
                .filter(|&v| g.has_edge(u, v))
                .fold(0u64, |acc, v| acc | 1 << v)
        })
        .collect()
}

/// Whether every pair of distinct vertices is joined, by repeated
/// relaxation of a reachability table.
pub fn naive_connected_without(g: &Graph, removed: &[usize]) -> bool {
    let n = g.n();
    let alive: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let Some(&start) = alive.first() else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    loop {
        let mut grew = false;
        for &u in &alive {
            if !seen[u] {
                continue;
            }
            for &v in &alive {
                if !seen[v] && g.has_edge(u, v) {
                    seen[v] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// Vertices whose deletion disconnects a connected graph.
pub fn naive_cut_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| g.n() > 2 && !naive_connected_without(g, &[v]))
        .collect()
}

/// A path from `x` to `y` with exactly `edges` edges, by exhaustive search.
pub fn brute_force_path(g: &Graph, x: usize, y: usize, edges: usize) -> Option<Vec<usize>> {
    let mut path = vec![x];
    let mut used = vec![false; g.n()];
    used[x] = true;
    extend_path(g, y, edges, &mut path, &mut used).then_some(path)
}

fn extend_path(g: &Graph, y: usize, edges: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let v = *path.last().expect("nonempty");
    if path.len() == edges + 1 {
        return v == y;
    }
    for w in 0..g.n() {
        if used[w] || !g.has_edge(v, w) || (w == y && path.len() != edges) {
            continue;
        }
        used[w] = true;
        path.push(w);
        if extend_path(g, y, edges, path, used) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Whether `seq` is a simple path of `g`.
pub fn is_path(g: &Graph, seq: &[usize]) -> bool {
    let distinct: BTreeSet<usize> = seq.iter().copied().collect();
    distinct.len() == seq.len() && seq.iter().all(|&v| v < g.n()) && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Whether `seq` is a cycle of `g` with at least three vertices.
pub fn is_cycle(g: &Graph, seq: &[usize]) -> bool {
    seq.len() >= 3 && is_path(g, seq) && g.has_edge(seq[0], seq[seq.len() - 1])
}
