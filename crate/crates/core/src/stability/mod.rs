//! Stability decompositions for graphs with close to `n²/4` edges: each
//! procedure either exhibits long cycles or removes a small vertex set and
//! returns a two-part split (or a bipartite structure), as an independently
//! checkable certificate.

mod cycth;
mod th3par;
mod thdc;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{CycleWitness, Timeout};
use crate::graph::Graph;
use crate::rational::{Check, Rational};
use crate::vertex_set::VertexSet;

pub use cycth::{decompose_cycth, decompose_cycth_within};
pub use th3par::{decompose_th3par, decompose_th3par_within};
pub use thdc::{decompose_thdc, decompose_thdc_within};
pub use verify::verify_stability_certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Procedure {
    Thdc,
    Cycth,
    Th3par,
}

impl Procedure {
    pub fn name(self) -> &'static str {
        match self {
            Procedure::Thdc => "thdc",
            Procedure::Cycth => "cycth",
            Procedure::Th3par => "th3par",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    /// Reject instances outside the constant ranges of the underlying
    /// theorems instead of running with a flag.
    #[serde(default)]
    pub enforce_paper_range: bool,
}

impl DecompositionParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        DecompositionParams {
            alpha,
            beta,
            gamma,
            enforce_paper_range: false,
        }
    }

    pub fn alpha_beta(alpha: Rational, beta: Rational) -> Self {
        Self::new(alpha, beta, Rational::zero())
    }

    pub fn gamma(gamma: Rational) -> Self {
        Self::new(Rational::zero(), Rational::zero(), gamma)
    }

    pub fn enforcing(mut self, on: bool) -> Self {
        self.enforce_paper_range = on;
        self
    }

    /// Nonnegativity always; the constant ranges only when enforcement is on.
    pub fn validate(&self, procedure: Procedure, n: usize) -> Result<(), StabilityError> {
        for (name, v) in [("alpha", &self.alpha), ("beta", &self.beta), ("gamma", &self.gamma)] {
            if v.is_negative() {
                return Err(StabilityError::InvalidParams(format!("{name} = {v} is negative")));
            }
        }
        if !self.enforce_paper_range {
            return Ok(());
        }
        let tiny = |k: i64| Rational::new(1, k);
        let n_r = Rational::from(n);
        let out = |msg: String| Err(StabilityError::OutOfRange(msg));
        match procedure {
            Procedure::Thdc => {
                if !self.alpha.is_positive() || self.alpha >= tiny(100_000) {
                    return out(format!("alpha = {} not in (0, 1/100000)", self.alpha));
                }
                if self.beta >= tiny(100_000) {
                    return out(format!("beta = {} not in [0, 1/100000)", self.beta));
                }
                if n_r * Rational::from(2usize) < self.alpha.recip() {
                    return out(format!("n = {n} is below 1/(2 alpha)"));
                }
            }
            Procedure::Th3par => {
                if !self.alpha.is_positive() || self.alpha >= tiny(200_000) {
                    return out(format!("alpha = {} not in (0, 1/200000)", self.alpha));
                }
                if self.beta > &self.alpha / &Rational::from(25usize) {
                    return out(format!("beta = {} exceeds alpha/25", self.beta));
                }
                if n_r < self.alpha.recip() {
                    return out(format!("n = {n} is below 1/alpha"));
                }
            }
            Procedure::Cycth => {
                if !self.gamma.is_positive() || self.gamma >= tiny(100_000) {
                    return out(format!("gamma = {} not in (0, 1/100000)", self.gamma));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum StabilityError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameters outside the enforced range: {0}")]
    OutOfRange(String),
    #[error("edge-count hypothesis fails: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    /// No edges between the two parts.
    Split,
    /// Both parts are independent.
    Bipartite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CycleRequirement {
    /// One cycle of at least this length.
    LongCycle { min_length: usize },
    /// A cycle of every length in `[3, up_to]`.
    Pancyclic { up_to: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBranch {
    pub requirement: CycleRequirement,
    pub witnesses: Vec<CycleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionBranch {
    pub removed: VertexSet,
    /// Smaller part first; ties go to the part with the smaller minimum.
    pub parts: [VertexSet; 2],
    pub structure: Structure,
    /// Intermediate vertex sets the verifier recomputes.
    pub stages: BTreeMap<String, VertexSet>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum Branch {
    Cycles(CycleBranch),
    Partition(PartitionBranch),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub procedure: Procedure,
    #[serde(flatten)]
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stuck {
    pub step: String,
    /// The object the argument needs at this step and did not find.
    pub missing: String,
    pub partial: BTreeMap<String, VertexSet>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Certificate(StabilityCertificate),
    Stuck(Stuck),
    /// Two disjoint cross paths closed into one cycle through both parts.
    GluedCycle {
        cycle: Vec<usize>,
        note: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub procedure: Procedure,
    pub n: usize,
    pub e: usize,
    pub params: DecompositionParams,
    pub hypothesis: Check,
    pub trace: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl DecompositionReport {
    pub fn certificate(&self) -> Option<&StabilityCertificate> {
        match &self.outcome {
            Outcome::Certificate(c) => Some(c),
            _ => None,
        }
    }
}

/// `{v : den·d(v) ≤ num·n}` with `n` the order of `g`, and the graph left
/// after removing it. One pass, not iterated.
pub fn peel_low_degree(g: &Graph, num: usize, den: usize) -> (VertexSet, Graph) {
    assert!(den > 0, "threshold denominator must be positive");
    let n = g.n();
    let low: VertexSet = g.vertices().iter().filter(|&v| den * g.degree(v) <= num * n).collect();
    let rest = g.remove_vertices(low).expect("subset of the vertex set");
    (low, rest)
}

/// Same threshold, with degrees taken inside `within` and `n` supplied.
pub(crate) fn peel_within(g: &Graph, within: VertexSet, num: usize, den: usize, n: usize) -> VertexSet {
    within
        .iter()
        .filter(|&v| den * g.degree_in(v, within) <= num * n)
        .collect()
}

/// Orders two sets by size, ties by smaller minimum.
pub(crate) fn ordered(a: VertexSet, b: VertexSet) -> [VertexSet; 2] {
    if (a.len(), a.min()) <= (b.len(), b.min()) {
        [a, b]
    } else {
        [b, a]
    }
}

/// Smallest `K` with `|K| ≤ 1` that disconnects `g[within]`: empty if it is
/// already disconnected, else its smallest cut vertex.
pub(crate) fn small_cut(g: &Graph, within: VertexSet) -> Option<VertexSet> {
    if within.len() < 2 {
        return None;
    }
    if !g.is_connected_within(within) {
        return Some(VertexSet::EMPTY);
    }
    let h = g.induced(within).expect("subset");
    h.cut_vertices().min().map(|v| VertexSet::singleton(h.label(v)))
}

pub(crate) fn ceil_times_n(coeff: &Rational, n: usize) -> usize {
    (coeff * &Rational::from(n)).ceil_usize()
}

pub(crate) fn step(trace: &mut Vec<TraceStep>, name: &str, note: impl Into<String>) {
    trace.push(TraceStep {
        step: name.into(),
        note: note.into(),
    });
}

pub(crate) fn host_witnesses(h: &Graph, ws: &[CycleWitness]) -> Vec<CycleWitness> {
    ws.iter()
        .map(|w| CycleWitness {
            length: w.length,
            cycle: h.to_host_seq(&w.cycle),
        })
        .collect()
}
