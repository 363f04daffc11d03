//! A Hamiltonian graph of order `2n` with no `C_{2n−1}` in it or in its
//! complement is `K_{n,n}` minus a star.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{cycle_of_length, validate_cycle};
use crate::graph::Graph;
use crate::report::CheckReport;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Le4Extraction {
    pub hamiltonian_cycle: Vec<usize>,
    /// Vertices at even positions of the cycle, starting with its first.
    pub u1: VertexSet,
    pub u2: VertexSet,
    /// Cross pairs missing from the graph; they share the vertex `u`.
    pub star: Vec<(usize, usize)>,
    pub u: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Le4Error {
    #[error("precondition violated: order {0} is not even and positive")]
    OddOrder(usize),
    #[error("precondition violated: the graph is not Hamiltonian")]
    NotHamiltonian,
    #[error("precondition violated: the graph contains C_{len}: {witness:?}")]
    LongCycleInGraph { len: usize, witness: Vec<usize> },
    #[error("precondition violated: the complement contains C_{len}: {witness:?}")]
    LongCycleInComplement { len: usize, witness: Vec<usize> },
    #[error("library error: {0}")]
    StarCheckFailed(String),
}

pub fn le4_extract(g: &Graph) -> Result<Le4Extraction, Le4Error> {
    let order = g.n();
    if order == 0 || order % 2 == 1 || order < 4 {
        return Err(Le4Error::OddOrder(order));
    }
    let n = order / 2;
    let exact = |h: &Graph, t: usize| cycle_of_length(h, t).expect("length within range");
    let ham = exact(g, order).ok_or(Le4Error::NotHamiltonian)?;
    if let Some(witness) = exact(g, order - 1) {
        return Err(Le4Error::LongCycleInGraph {
            len: order - 1,
            witness,
        });
    }
    let comp = g.complement();
    if let Some(witness) = exact(&comp, order - 1) {
        return Err(Le4Error::LongCycleInComplement {
            len: order - 1,
            witness,
        });
    }
    let u1: VertexSet = ham.iter().step_by(2).copied().collect();
    let u2: VertexSet = ham.iter().skip(1).step_by(2).copied().collect();
    for (name, s) in [("U1", u1), ("U2", u2)] {
        if !g.is_independent(s).expect("in range") {
            return Err(Le4Error::StarCheckFailed(format!("{name} is not independent")));
        }
    }
    let star = comp.edges_between(u1, u2);
    let u = match star.as_slice() {
        [] => 0,
        [(a, b), rest @ ..] => {
            let centre = [*a, *b]
                .into_iter()
                .find(|&c| rest.iter().all(|&(x, y)| x == c || y == c));
            centre.ok_or_else(|| Le4Error::StarCheckFailed(format!("cross non-edges {star:?} are not a star")))?
        }
    };
    let ext = Le4Extraction {
        hamiltonian_cycle: ham,
        u1,
        u2,
        star,
        u,
    };
    let rep = validate_le4(g, &ext);
    if !rep.passed {
        return Err(Le4Error::StarCheckFailed(format!(
            "re-validation failed: {:?}",
            rep.failures()
        )));
    }
    debug_assert_eq!(u1.len(), n);
    Ok(ext)
}

/// Structural re-check of an extraction against the graph alone.
pub fn validate_le4(g: &Graph, ext: &Le4Extraction) -> CheckReport {
    let mut rep = CheckReport::new();
    let all = g.vertices();
    let (u1, u2, u) = (ext.u1, ext.u2, ext.u);
    let in_range = u1.is_subset(all) && u2.is_subset(all) && u < g.n();
    rep.push("vertices-in-range", in_range, "");
    if !in_range {
        return rep;
    }
    let n = g.n() / 2;
    rep.push(
        "hamiltonian-cycle",
        validate_cycle(g, &ext.hamiltonian_cycle).is_ok() && ext.hamiltonian_cycle.len() == g.n(),
        "",
    );
    rep.push(
        "partition",
        u1.is_disjoint(u2) && (u1 | u2) == all && u1.len() == n && u2.len() == n,
        format!("|U1| = {}, |U2| = {}", u1.len(), u2.len()),
    );
    rep.push("u1-independent", g.is_independent(u1).expect("in range"), "");
    rep.push("u2-independent", g.is_independent(u2).expect("in range"), "");
    let (a, b) = (u1.without(u), u2.without(u));
    let missing: Vec<(usize, usize)> = a
        .iter()
        .flat_map(|x| (b - g.neighbors(x)).iter().map(move |y| (x, y)))
        .collect();
    let inner = [a, b].iter().all(|&s| g.is_independent(s).expect("in range"));
    let mut sizes = [a.len(), b.len()];
    sizes.sort_unstable();
    rep.push(
        "remainder-complete-bipartite",
        missing.is_empty() && inner && sizes == [n - 1, n],
        format!("G - {u} has classes of sizes {sizes:?}, missing cross pairs {missing:?}"),
    );
    rep
}
