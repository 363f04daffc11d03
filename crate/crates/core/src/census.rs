//! Isomorphism classes of small graphs, generated by vertex extension and
//! deduplicated by a canonical code.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest order supported by [`all_graphs`].
pub const MAX_CENSUS_ORDER: usize = 8;

/// Canonical code of a graph on at most 11 vertices: the minimum, over
/// orderings compatible with an equitable colour refinement, of the upper
/// triangle read as a bit string.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes are packed into 64 bits");
    let cells = refine(g);
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_cells(g, &cells, 0, &mut order, &mut best);
    best
}

fn code_of(g: &Graph, order: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if g.has_edge(order[i], order[j]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn permute_cells(g: &Graph, cells: &[Vec<usize>], ci: usize, order: &mut Vec<usize>, best: &mut u64) {
    if ci == cells.len() {
        *best = (*best).min(code_of(g, order));
        return;
    }
    let mut cell = cells[ci].clone();
    heap_permutations(&mut cell, &mut |perm| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_cells(g, cells, ci + 1, order, best);
        order.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let k = items.len();
    let mut c = vec![0usize; k];
    f(items);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Ordered cells of the coarsest equitable partition refining the degree
/// partition. Cell order depends only on isomorphism-invariant data.
fn refine(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut color: Vec<usize> = vec![0; n];
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut counts: Vec<usize> = g.neighbors(v).iter().map(|w| color[w]).collect();
                counts.sort_unstable();
                (color[v], counts)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let index: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| index.binary_search(&s).expect("present")).collect();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        let after = index.len();
        color = next;
        if after == before {
            break;
        }
    }
    let classes = color.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); classes];
    for (v, &c) in color.iter().enumerate() {
        cells[c].push(v);
    }
    cells
}

fn from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n).expect("n is small");
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 1 {
                g.add_edge(i, j).expect("distinct vertices");
            }
            bit += 1;
        }
    }
    g
}

/// One representative of every isomorphism class on `n` vertices, each in
/// canonical labelling, sorted by canonical code.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_CENSUS_ORDER, "census is limited to n ≤ {MAX_CENSUS_ORDER}");
    let mut codes: BTreeSet<u64> = BTreeSet::new();
    codes.insert(0);
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for &code in &codes {
            let g = from_code(m - 1, code);
            for nbhd in 0..1u64 << (m - 1) {
                let mut rows: Vec<VertexSet> = g.rows().to_vec();
                rows.push(VertexSet::from_bits(nbhd));
                for (v, row) in rows.iter_mut().enumerate().take(m - 1) {
                    if nbhd >> v & 1 == 1 {
                        row.insert(m - 1);
                    }
                }
                let h = Graph::from_rows(&rows).expect("simple by construction");
                next.insert(canonical_code(&h));
            }
        }
        codes = next;
    }
    codes.into_iter().map(|c| from_code(n, c)).collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(|g| g.is_connected()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn class_counts() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn code_is_invariant_under_relabelling() {
        let p = named::petersen();
        let perm = [3, 7, 0, 9, 1, 5, 2, 8, 6, 4];
        let edges: Vec<(usize, usize)> = p.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let q = Graph::new(10, &edges).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&q));
        assert_ne!(
            canonical_code(&named::cycle(6)),
            canonical_code(&named::disjoint_union(&named::cycle(3), &named::cycle(3)))
        );
    }
}
