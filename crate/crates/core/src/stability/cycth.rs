//! Either every cycle length up to `⌈(1/2 + γ)n⌉`, or one vertex whose removal
//! splits the graph into two nearly equal halves.

use std::collections::BTreeMap;

use crate::cycles::{cover_range, Deadline};
use crate::graph::Graph;
use crate::paths::{disjoint_paths_between, hamiltonian_path_between_within, PathError};
use crate::rational::{q, Check, Expr, Rational, Relation};
use crate::vertex_set::VertexSet;

use super::{
    ceil_times_n, ordered, step, thdc, Branch, CycleBranch, CycleRequirement, DecompositionParams, DecompositionReport,
    Outcome, PartitionBranch, Procedure, StabilityCertificate, StabilityError, Structure, Stuck, TraceStep,
};

pub fn decompose_cycth(g: &Graph, gamma: &Rational) -> Result<DecompositionReport, StabilityError> {
    decompose_cycth_within(g, &DecompositionParams::gamma(gamma.clone()), &Deadline::NONE)
}

pub fn decompose_cycth_within(
    g: &Graph,
    params: &DecompositionParams,
    deadline: &Deadline,
) -> Result<DecompositionReport, StabilityError> {
    let g = g.clone().unlabeled();
    params.validate(Procedure::Cycth, g.n())?;
    let n = g.n();
    let hypothesis = Check::new(
        "hypothesis",
        Expr::count(4 * g.edge_count()),
        Relation::Gt,
        Expr::count(n * n),
    );
    if params.enforce_paper_range && !hypothesis.holds {
        return Err(StabilityError::HypothesisViolated(hypothesis.to_string()));
    }
    let mut trace = Vec::new();
    let outcome = run(&g, &params.gamma, deadline, &mut trace)?;
    Ok(DecompositionReport {
        procedure: Procedure::Cycth,
        n,
        e: g.edge_count(),
        params: params.clone(),
        hypothesis,
        trace,
        outcome,
    })
}

fn stuck(step: &str, missing: &str, partial: BTreeMap<String, VertexSet>) -> Outcome {
    Outcome::Stuck(Stuck {
        step: step.into(),
        missing: missing.into(),
        partial,
        checks: Vec::new(),
    })
}

fn run(
    g: &Graph,
    gamma: &Rational,
    deadline: &Deadline,
    trace: &mut Vec<TraceStep>,
) -> Result<Outcome, StabilityError> {
    let n = g.n();
    let top = ceil_times_n(&(q(1, 2) + gamma), n);
    let coverage = cover_range(g, top, deadline)?;
    step(
        trace,
        "short-cycles",
        format!("lengths 3..={top}; missing {:?}", coverage.missing),
    );
    if coverage.complete() {
        return Ok(Outcome::Certificate(StabilityCertificate {
            procedure: Procedure::Cycth,
            branch: Branch::Cycles(CycleBranch {
                requirement: CycleRequirement::Pancyclic { up_to: top },
                witnesses: coverage.witnesses,
            }),
        }));
    }

    let mut sub_trace = Vec::new();
    let sub = thdc::run(g, gamma, &Rational::zero(), deadline, &mut sub_trace)?;
    for s in sub_trace {
        step(trace, &format!("split:{}", s.step), s.note);
    }
    let pb = match sub {
        Outcome::Certificate(StabilityCertificate {
            branch: Branch::Partition(pb),
            ..
        }) => pb,
        other => {
            let what = match other {
                Outcome::Certificate(_) => "the split procedure found a long cycle instead",
                _ => "the split procedure did not produce two parts",
            };
            step(trace, "split", what);
            return Ok(stuck(
                "split",
                "two parts G1, G2 from the split procedure",
                BTreeMap::new(),
            ));
        }
    };
    let [g1, g2] = pb.parts;
    let mut stages = BTreeMap::new();
    stages.insert("G1".to_string(), g1);
    stages.insert("G2".to_string(), g2);

    let cross = disjoint_paths_between(g, g1, g2, 2);
    step(
        trace,
        "cross-paths",
        format!("{} vertex-disjoint G1-G2 paths", cross.len()),
    );
    if cross.len() >= 2 {
        return glue(g, g1, g2, &cross[0], &cross[1], deadline, trace, stages);
    }

    let Some(u) = g.vertices().iter().find(|&u| separates(g, u, g1, g2)) else {
        step(trace, "separator", "no single vertex separates G1 from G2");
        return Ok(stuck("separator", "vertex separating G1 and G2", stages));
    };
    let rest = g.vertices().without(u);
    let h1: VertexSet = g
        .components_within(rest)
        .into_iter()
        .filter(|c| !c.is_disjoint(g1.without(u)))
        .fold(VertexSet::EMPTY, |acc, c| acc | c);
    let h2 = rest - h1;
    stages.insert("separator".to_string(), VertexSet::singleton(u));
    step(
        trace,
        "separator",
        format!("u = {u}, |H1| = {}, |H2| = {}", h1.len(), h2.len()),
    );
    let [p1, p2] = ordered(h1, h2);
    let checks = partition_checks(n, gamma, p1, p2);
    Ok(Outcome::Certificate(StabilityCertificate {
        procedure: Procedure::Cycth,
        branch: Branch::Partition(PartitionBranch {
            removed: VertexSet::singleton(u),
            parts: [p1, p2],
            structure: Structure::Split,
            stages,
            checks,
        }),
    }))
}

fn separates(g: &Graph, u: usize, a: VertexSet, b: VertexSet) -> bool {
    let rest = g.vertices().without(u);
    let (a, b) = (a.without(u), b.without(u));
    g.components_within(rest)
        .iter()
        .all(|c| c.is_disjoint(a) || c.is_disjoint(b))
}

pub(super) fn partition_checks(n: usize, gamma: &Rational, p1: VertexSet, p2: VertexSet) -> Vec<Check> {
    let nr = Rational::from(n);
    let r = Rational::from_usize;
    vec![
        Check::new(
            "part-lower",
            Expr::count(p1.len()),
            Relation::Gt,
            (q(1, 2) - r(900) * gamma) * &nr,
        ),
        Check::new(
            "parts-ordered",
            Expr::count(p1.len()),
            Relation::Le,
            Expr::count(p2.len()),
        ),
        Check::new(
            "part-upper",
            Expr::count(p2.len()),
            Relation::Lt,
            (q(1, 2) + r(900) * gamma) * &nr,
        ),
        Check::new(
            "part1-upper-derived",
            Expr::count(p1.len()),
            Relation::Lt,
            (q(1, 2) + r(840) * gamma) * &nr,
        ),
        Check::new(
            "part2-upper-derived",
            Expr::count(p2.len()),
            Relation::Le,
            (q(1, 2) + r(840) * gamma) * &nr,
        ),
    ]
}

/// Closes two cross paths with spanning paths of the parts:
/// `Q1(u1, u2) P(u2, v2) Q2(v2, v1) P(v1, u1)`.
#[allow(clippy::too_many_arguments)]
fn glue(
    g: &Graph,
    g1: VertexSet,
    g2: VertexSet,
    p: &[usize],
    r: &[usize],
    deadline: &Deadline,
    trace: &mut Vec<TraceStep>,
    stages: BTreeMap<String, VertexSet>,
) -> Result<Outcome, StabilityError> {
    let (u1, v1) = (p[0], *p.last().expect("nonempty"));
    let (u2, v2) = (r[0], *r.last().expect("nonempty"));
    let spanning = |part: VertexSet, a: usize, b: usize| -> Result<Option<Vec<usize>>, StabilityError> {
        let h = g.induced(part).expect("subset");
        let la = h.local_index(a).expect("in part");
        let lb = h.local_index(b).expect("in part");
        match hamiltonian_path_between_within(&h, la, lb, deadline) {
            Ok(path) => Ok(Some(h.to_host_seq(&path.path.vertices))),
            Err(PathError::Timeout(t)) => Err(t.into()),
            Err(_) => Ok(None),
        }
    };
    let (Some(q1), Some(q2)) = (spanning(g1, u1, u2)?, spanning(g2, v2, v1)?) else {
        step(trace, "glue", "a part has no spanning path between the path ends");
        return Ok(stuck(
            "glue",
            "spanning paths of G1 and G2 between the cross-path ends",
            stages,
        ));
    };
    let mut cycle = q1;
    cycle.extend_from_slice(&r[1..r.len() - 1]);
    cycle.extend(q2);
    cycle.extend(p[1..p.len() - 1].iter().rev());
    let note = format!(
        "cycle of length {} through all of G1 and G2; two disjoint cross paths exist, so no single separating vertex does",
        cycle.len()
    );
    step(trace, "glue", note.clone());
    Ok(Outcome::GluedCycle { cycle, note })
}
