//! Exact longest-cycle and cycle-of-length search.
//!
//! Every cycle has a unique minimum vertex `s` and lies inside one block, so
//! the search enumerates simple paths from `s` through the vertices of that
//! block that exceed `s`. Witnesses are the first cycle met in the order
//! (start vertex, block, ascending neighbour), which makes them reproducible.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Wall-clock limit shared by the exact searches.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub const NONE: Deadline = Deadline(None);

    pub fn after(limit: Duration) -> Self {
        Deadline(Some(Instant::now() + limit))
    }

    pub fn from_secs(secs: Option<f64>) -> Self {
        match secs {
            Some(s) => Deadline::after(Duration::from_secs_f64(s.max(0.0))),
            None => Deadline::NONE,
        }
    }

    pub fn is_set(&self) -> bool {
        self.0.is_some()
    }

    pub fn expired(&self) -> bool {
        matches!(self.0, Some(t) if Instant::now() >= t)
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("search deadline exceeded")]
pub struct Timeout;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle length {t} outside [3, {n}]")]
    LengthOutOfRange { t: usize, n: usize },
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestCycle {
    pub length: usize,
    pub witness: Option<Vec<usize>>,
}

/// The longest cycle found before the deadline.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("longest-cycle search timed out with a best-so-far of {}", best.length)]
pub struct LongestTimeout {
    pub best: LongestCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub length: usize,
    pub cycle: Vec<usize>,
}

/// Which cycle lengths occur in a graph, with one witness per length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    /// Length of a longest cycle; 0 for forests.
    pub c: usize,
    pub hamiltonian: bool,
    pub lengths: Vec<usize>,
    pub witnesses: Vec<CycleWitness>,
}

impl SpectrumReport {
    pub fn contains(&self, t: usize) -> bool {
        self.lengths.binary_search(&t).is_ok()
    }

    pub fn witness(&self, t: usize) -> Option<&[usize]> {
        self.witnesses
            .iter()
            .find(|w| w.length == t)
            .map(|w| w.cycle.as_slice())
    }

    /// Lengths in `[3, c]` with no cycle.
    pub fn gaps(&self) -> Vec<usize> {
        (3..=self.c).filter(|&t| !self.contains(t)).collect()
    }
}

/// Per-length results resolved before a deadline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSpectrum {
    pub n: usize,
    /// Longest cycle found so far (a lower bound on `c`).
    pub best_length: usize,
    pub present: Vec<CycleWitness>,
    pub absent: Vec<usize>,
    pub unresolved: Vec<usize>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CycleDefect {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} is not in the graph")]
    OutOfRange(usize),
    #[error("vertex {0} repeats")]
    Repeated(usize),
    #[error("{0} and {1} are consecutive but not adjacent")]
    NotAdjacent(usize, usize),
}

/// Checks that `seq` is a cycle of `g`: at least three distinct vertices,
/// consecutive pairs adjacent, and the last adjacent to the first.
pub fn validate_cycle(g: &Graph, seq: &[usize]) -> Result<(), CycleDefect> {
    if seq.len() < 3 {
        return Err(CycleDefect::TooShort(seq.len()));
    }
    let mut seen = VertexSet::EMPTY;
    for &v in seq {
        if v >= g.n() {
            return Err(CycleDefect::OutOfRange(v));
        }
        if seen.contains(v) {
            return Err(CycleDefect::Repeated(v));
        }
        seen.insert(v);
    }
    for i in 0..seq.len() {
        let (a, b) = (seq[i], seq[(i + 1) % seq.len()]);
        if !g.has_edge(a, b) {
            return Err(CycleDefect::NotAdjacent(a, b));
        }
    }
    Ok(())
}

/// The vertex sets scanned for cycles whose minimum vertex is `s`.
fn anchored_regions(g: &Graph, blocks: &[(VertexSet, bool)]) -> Vec<(usize, VertexSet, bool)> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        for &(b, bipartite) in blocks {
            if b.len() >= 3 && b.contains(s) {
                let w = b.above(s).with(s);
                if w.len() >= 3 {
                    out.push((s, w, bipartite));
                }
            }
        }
    }
    out
}

fn block_table(g: &Graph) -> Vec<(VertexSet, bool)> {
    g.blocks()
        .into_iter()
        .map(|b| {
            let bip = g.induced(b).map(|h| h.is_bipartite()).unwrap_or(false);
            (b, bip)
        })
        .collect()
}

const CLOCK_INTERVAL: u32 = 1 << 12;

struct Search<'a> {
    rows: &'a [VertexSet],
    region: VertexSet,
    s_nbrs: VertexSet,
    path: Vec<usize>,
    deadline: &'a Deadline,
    ticks: u32,
    timed_out: bool,
}

impl<'a> Search<'a> {
    fn new(rows: &'a [VertexSet], s: usize, region: VertexSet, deadline: &'a Deadline) -> Self {
        Search {
            rows,
            region,
            s_nbrs: rows[s] & region,
            path: vec![s],
            deadline,
            ticks: 0,
            timed_out: false,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks >= CLOCK_INTERVAL {
            self.ticks = 0;
            if self.deadline.expired() {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    /// Vertices of `avail` reachable from `v` through `avail`.
    #[inline]
    fn reach(&self, v: usize, avail: VertexSet) -> VertexSet {
        let mut seen = VertexSet::EMPTY;
        let mut frontier = self.rows[v] & avail;
        while !frontier.is_empty() {
            seen |= frontier;
            let mut next = VertexSet::EMPTY;
            for w in frontier {
                next |= self.rows[w];
            }
            frontier = next & (avail - seen);
        }
        seen
    }

    /// Extends the current path looking for a longer cycle than `best`.
    fn longest(&mut self, visited: VertexSet, best: &mut Vec<usize>, limit: usize) -> bool {
        if self.tick() {
            return true;
        }
        let v = *self.path.last().expect("path starts at s");
        let depth = self.path.len();
        if depth >= 3 && self.s_nbrs.contains(v) && depth > best.len() {
            best.clone_from(&self.path);
            if depth == limit {
                return true;
            }
        }
        let avail = self.region - visited;
        let reach = self.reach(v, avail);
        if depth + reach.len() <= best.len() {
            return false;
        }
        if (reach & self.s_nbrs).is_empty() {
            return false;
        }
        for w in self.rows[v] & avail {
            self.path.push(w);
            let stop = self.longest(visited.with(w), best, limit);
            self.path.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// Looks for a cycle through the current path with exactly `t` vertices.
    fn exact(&mut self, visited: VertexSet, t: usize) -> bool {
        if self.tick() {
            return false;
        }
        let v = *self.path.last().expect("path starts at s");
        let depth = self.path.len();
        let avail = self.region - visited;
        let remaining = t - depth;
        if remaining == 1 {
            if let Some(w) = (self.rows[v] & avail & self.s_nbrs).min() {
                self.path.push(w);
                return true;
            }
            return false;
        }
        if (avail & self.s_nbrs).is_empty() {
            return false;
        }
        let reach = self.reach(v, avail);
        if reach.len() < remaining || (reach & self.s_nbrs).is_empty() {
            return false;
        }
        for w in self.rows[v] & avail {
            self.path.push(w);
            if self.exact(visited.with(w), t) {
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

pub fn longest_cycle(g: &Graph) -> LongestCycle {
    longest_cycle_within(g, &Deadline::NONE).expect("no deadline")
}

pub fn longest_cycle_within(g: &Graph, deadline: &Deadline) -> Result<LongestCycle, LongestTimeout> {
    let blocks = block_table(g);
    let cap = blocks
        .iter()
        .map(|(b, _)| b.len())
        .filter(|&k| k >= 3)
        .max()
        .unwrap_or(0);
    let mut best: Vec<usize> = Vec::new();
    for (s, region, _) in anchored_regions(g, &blocks) {
        if best.len() == cap || region.len() <= best.len() {
            continue;
        }
        let mut search = Search::new(g.rows(), s, region, deadline);
        search.longest(VertexSet::singleton(s), &mut best, region.len());
        if search.timed_out {
            return Err(LongestTimeout { best: to_longest(best) });
        }
    }
    Ok(to_longest(best))
}

fn to_longest(best: Vec<usize>) -> LongestCycle {
    if best.is_empty() {
        LongestCycle {
            length: 0,
            witness: None,
        }
    } else {
        LongestCycle {
            length: best.len(),
            witness: Some(best),
        }
    }
}

/// A cycle with exactly `t` vertices, or `None` if there is none.
pub fn cycle_of_length(g: &Graph, t: usize) -> Result<Option<Vec<usize>>, CycleError> {
    cycle_of_length_within(g, t, &Deadline::NONE)
}

pub fn cycle_of_length_within(g: &Graph, t: usize, deadline: &Deadline) -> Result<Option<Vec<usize>>, CycleError> {
    if t < 3 || t > g.n() {
        return Err(CycleError::LengthOutOfRange { t, n: g.n() });
    }
    let blocks = block_table(g);
    Ok(exact_in_regions(g, &anchored_regions(g, &blocks), t, deadline)?)
}

/// One length of the spectrum and its search outcome.
type LengthSearch = (usize, Result<Option<Vec<usize>>, Timeout>);

fn exact_in_regions(
    g: &Graph,
    regions: &[(usize, VertexSet, bool)],
    t: usize,
    deadline: &Deadline,
) -> Result<Option<Vec<usize>>, Timeout> {
    for &(s, region, bipartite) in regions {
        if region.len() < t || (bipartite && t % 2 == 1) {
            continue;
        }
        let mut search = Search::new(g.rows(), s, region, deadline);
        if search.exact(VertexSet::singleton(s), t) {
            return Ok(Some(search.path));
        }
        if search.timed_out {
            return Err(Timeout);
        }
    }
    Ok(None)
}

pub fn cycle_spectrum(g: &Graph) -> SpectrumReport {
    cycle_spectrum_within(g, &Deadline::NONE).expect("no deadline")
}

/// Exact spectrum; the per-length searches run in parallel and are merged
/// in length order.
pub fn cycle_spectrum_within(g: &Graph, deadline: &Deadline) -> Result<SpectrumReport, PartialSpectrum> {
    let n = g.n();
    let longest = match longest_cycle_within(g, deadline) {
        Ok(l) => l,
        Err(LongestTimeout { best }) => {
            return Err(PartialSpectrum {
                n,
                best_length: best.length,
                present: best
                    .witness
                    .map(|cycle| {
                        vec![CycleWitness {
                            length: cycle.len(),
                            cycle,
                        }]
                    })
                    .unwrap_or_default(),
                absent: Vec::new(),
                unresolved: (3..=n).filter(|&t| t != best.length).collect(),
            })
        }
    };
    let c = longest.length;
    let blocks = block_table(g);
    let regions = anchored_regions(g, &blocks);
    let results: Vec<LengthSearch> = (3..c)
        .into_par_iter()
        .map(|t| (t, exact_in_regions(g, &regions, t, deadline)))
        .collect();
    let mut witnesses = Vec::new();
    let mut absent = Vec::new();
    let mut unresolved = Vec::new();
    for (t, r) in results {
        match r {
            Ok(Some(cycle)) => witnesses.push(CycleWitness { length: t, cycle }),
            Ok(None) => absent.push(t),
            Err(Timeout) => unresolved.push(t),
        }
    }
    if let Some(cycle) = longest.witness {
        witnesses.push(CycleWitness { length: c, cycle });
    }
    if !unresolved.is_empty() {
        absent.extend(c + 1..=n);
        return Err(PartialSpectrum {
            n,
            best_length: c,
            present: witnesses,
            absent,
            unresolved,
        });
    }
    Ok(SpectrumReport {
        n,
        c,
        hamiltonian: n >= 3 && c == n,
        lengths: witnesses.iter().map(|w| w.length).collect(),
        witnesses,
    })
}

/// Outcome of testing every length in `[3, top]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeCoverage {
    pub top: usize,
    pub witnesses: Vec<CycleWitness>,
    pub missing: Vec<usize>,
}

impl RangeCoverage {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Searches each length in `[3, top]`; lengths above `n` are reported missing.
pub fn cover_range(g: &Graph, top: usize, deadline: &Deadline) -> Result<RangeCoverage, Timeout> {
    let blocks = block_table(g);
    let regions = anchored_regions(g, &blocks);
    let n = g.n();
    let results: Vec<LengthSearch> = (3..=top.min(n))
        .into_par_iter()
        .map(|t| (t, exact_in_regions(g, &regions, t, deadline)))
        .collect();
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for (t, r) in results {
        match r? {
            Some(cycle) => witnesses.push(CycleWitness { length: t, cycle }),
            None => missing.push(t),
        }
    }
    missing.extend((n + 1).max(3)..=top);
    Ok(RangeCoverage {
        top,
        witnesses,
        missing,
    })
}

/// Allocation-free test for a cycle on exactly `t` vertices in a graph given
/// by adjacency rows. Used by the colouring sweeps, where it runs billions of
/// times, so it skips block decomposition and deadlines.
pub fn has_cycle_of_length(rows: &[u64], t: usize) -> bool {
    let n = rows.len();
    if t < 3 || t > n {
        return false;
    }
    for s in 0..=n - t {
        let region = !0u64 << (s + 1) & mask(n);
        let s_nbrs = rows[s] & region;
        if s_nbrs.count_ones() < 2 {
            continue;
        }
        let mut first_choices = s_nbrs;
        while first_choices != 0 {
            let a = first_choices.trailing_zeros() as usize;
            first_choices &= first_choices - 1;
            // The closing vertex exceeds the first one, so each cycle is
            // met in one direction only.
            let close = s_nbrs & (!0u64 << a << 1);
            if close == 0 {
                break;
            }
            if extend(rows, a, region & !(1 << a), close, t - 2) {
                return true;
            }
        }
    }
    false
}

#[inline]
fn mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Can a path from `v` through `avail` add `r` more vertices, the last of
/// which lies in `close`?
fn extend(rows: &[u64], v: usize, avail: u64, close: u64, r: usize) -> bool {
    let next = rows[v] & avail;
    if r == 1 {
        return next & close != 0;
    }
    if avail & close == 0 || avail.count_ones() < r as u32 {
        return false;
    }
    let mut cand = next;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if extend(rows, w, avail & !(1 << w), close, r - 1) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn small_cases() {
        assert_eq!(longest_cycle(&named::complete(4)).length, 4);
        let tree = Graph::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let l = longest_cycle(&tree);
        assert_eq!((l.length, l.witness), (0, None));
        let c = cycle_of_length(&named::complete(5), 5).unwrap().unwrap();
        validate_cycle(&named::complete(5), &c).unwrap();
        assert_eq!(cycle_of_length(&named::complete_bipartite(3, 3), 5).unwrap(), None);
        assert_eq!(
            cycle_of_length(&named::complete(4), 5),
            Err(CycleError::LengthOutOfRange { t: 5, n: 4 })
        );
        assert_eq!(
            cycle_of_length(&named::complete(4), 2),
            Err(CycleError::LengthOutOfRange { t: 2, n: 4 })
        );
    }

    #[test]
    fn petersen_spectrum() {
        let p = named::petersen();
        let s = cycle_spectrum(&p);
        assert_eq!(s.lengths, vec![5, 6, 8, 9]);
        assert_eq!(s.c, 9);
        assert!(!s.hamiltonian);
        for w in &s.witnesses {
            validate_cycle(&p, &w.cycle).unwrap();
            assert_eq!(w.cycle.len(), w.length);
        }
        assert_eq!(cycle_of_length(&p, 7).unwrap(), None);
    }

    #[test]
    fn spectra_of_simple_graphs() {
        assert_eq!(cycle_spectrum(&named::complete(4)).lengths, vec![3, 4]);
        assert_eq!(cycle_spectrum(&named::cycle(6)).lengths, vec![6]);
        let bowtie = named::cliques_sharing_vertex(3, 3);
        assert_eq!(cycle_spectrum(&bowtie).lengths, vec![3]);
    }

    #[test]
    fn witness_is_first_in_search_order() {
        let c = cycle_of_length(&named::complete(5), 4).unwrap().unwrap();
        assert_eq!(c, vec![0, 1, 2, 3]);
        assert_eq!(longest_cycle(&named::complete(5)).witness.unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn fast_path_matches() {
        let p = named::petersen();
        let rows: Vec<u64> = p.rows().iter().map(|r| r.bits()).collect();
        for t in 3..=10 {
            assert_eq!(
                has_cycle_of_length(&rows, t),
                cycle_of_length(&p, t).unwrap().is_some(),
                "t = {t}"
            );
        }
    }

    #[test]
    fn validate_rejects_defects() {
        let k4 = named::complete(4);
        assert_eq!(validate_cycle(&k4, &[0, 1]), Err(CycleDefect::TooShort(2)));
        assert_eq!(validate_cycle(&k4, &[0, 1, 1]), Err(CycleDefect::Repeated(1)));
        let c5 = named::cycle(5);
        assert_eq!(validate_cycle(&c5, &[0, 1, 3]), Err(CycleDefect::NotAdjacent(1, 3)));
    }

    #[test]
    fn cover_range_reports_missing() {
        let p = named::petersen();
        let r = cover_range(&p, 12, &Deadline::NONE).unwrap();
        assert_eq!(r.missing, vec![3, 4, 7, 10, 11, 12]);
    }
}
