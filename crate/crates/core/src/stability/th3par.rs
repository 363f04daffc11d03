//! Either every cycle length up to `⌈(1/2 + α)n⌉`, or a partition
//! `V0 ∪ V1 ∪ V2` with `G - V0` split along or across `V1, V2`.

use std::collections::BTreeMap;

use crate::cycles::{cover_range, CycleWitness, Deadline};
use crate::graph::Graph;
use crate::rational::{q, Check, Expr, Rational, Relation};
use crate::vertex_set::VertexSet;

use super::{
    ceil_times_n, host_witnesses, ordered, peel_within, small_cut, step, thdc, Branch, CycleBranch, CycleRequirement,
    DecompositionParams, DecompositionReport, Outcome, PartitionBranch, Procedure, StabilityCertificate,
    StabilityError, Structure, Stuck, TraceStep,
};

pub fn decompose_th3par(g: &Graph, params: &DecompositionParams) -> Result<DecompositionReport, StabilityError> {
    decompose_th3par_within(g, params, &Deadline::NONE)
}

pub fn decompose_th3par_within(
    g: &Graph,
    params: &DecompositionParams,
    deadline: &Deadline,
) -> Result<DecompositionReport, StabilityError> {
    let g = g.clone().unlabeled();
    params.validate(Procedure::Th3par, g.n())?;
    let hypothesis = thdc::hypothesis_check(&g, &params.beta);
    if params.enforce_paper_range && !hypothesis.holds {
        return Err(StabilityError::HypothesisViolated(hypothesis.to_string()));
    }
    let mut trace = Vec::new();
    let outcome = run(&g, &params.alpha, &params.beta, deadline, &mut trace)?;
    Ok(DecompositionReport {
        procedure: Procedure::Th3par,
        n: g.n(),
        e: g.edge_count(),
        params: params.clone(),
        hypothesis,
        trace,
        outcome,
    })
}

fn stuck(step: &str, missing: &str, partial: BTreeMap<String, VertexSet>, checks: Vec<Check>) -> Outcome {
    Outcome::Stuck(Stuck {
        step: step.into(),
        missing: missing.into(),
        partial,
        checks,
    })
}

fn cycles(up_to: usize, witnesses: Vec<CycleWitness>) -> Outcome {
    Outcome::Certificate(StabilityCertificate {
        procedure: Procedure::Th3par,
        branch: Branch::Cycles(CycleBranch {
            requirement: CycleRequirement::Pancyclic { up_to },
            witnesses: witnesses.into_iter().filter(|w| w.length <= up_to).collect(),
        }),
    })
}

/// Lengths `[3, top]` in `g[within]`, witnesses in host labels.
fn cover_within(
    g: &Graph,
    within: VertexSet,
    top: usize,
    deadline: &Deadline,
) -> Result<(bool, Vec<CycleWitness>, Vec<usize>), StabilityError> {
    let h = g.induced(within).expect("subset");
    let cov = cover_range(&h, top, deadline)?;
    Ok((cov.complete(), host_witnesses(&h, &cov.witnesses), cov.missing))
}

fn run(
    g: &Graph,
    alpha: &Rational,
    beta: &Rational,
    deadline: &Deadline,
    trace: &mut Vec<TraceStep>,
) -> Result<Outcome, StabilityError> {
    let n = g.n();
    let nr = Rational::from(n);
    let r = Rational::from_usize;
    let required = ceil_times_n(&(q(1, 2) + alpha), n);
    let mut stages = BTreeMap::new();
    let mut checks = Vec::new();

    let m = peel_within(g, g.vertices(), 9, 20, n);
    stages.insert("M".to_string(), m);
    let size = Check::new(
        "low-degree-set-size",
        Expr::count(m.len()),
        Relation::Lt,
        r(20) * (alpha + &(r(2) * beta)) * &nr,
    );
    step(
        trace,
        "low-degree-peel",
        format!("|M| = {} (degree at most 9n/20); {size}", m.len()),
    );
    let small_m = size.holds;
    checks.push(size);

    if !small_m {
        let m0_size = ceil_times_n(&(r(24) * beta), n);
        let m0: VertexSet = m.iter().take(m0_size).collect();
        stages.insert("M0".to_string(), m0);
        let rest = g.vertices() - m0;
        let rest_n = rest.len();
        checks.push(Check::new(
            "remainder-edge-density",
            Expr::count(g.edge_count_within(rest)),
            Relation::Gt,
            Rational::from(rest_n * rest_n) / r(4),
        ));
        let top = ceil_times_n(&(q(1, 2) + &(r(2) * alpha)), rest_n);
        let (complete, witnesses, missing) = cover_within(g, rest, top, deadline)?;
        step(
            trace,
            "remainder-cycles",
            format!("|M0| = {}, lengths 3..={top} in G - M0; missing {missing:?}", m0.len()),
        );
        if complete {
            if top >= required {
                return Ok(cycles(required, witnesses));
            }
            step(
                trace,
                "remainder-cycles",
                format!("covered range stops below the required {required}"),
            );
            return Ok(stuck(
                "remainder-cycles",
                "cycles of every length up to the required bound",
                stages,
                checks,
            ));
        }
        let h = g.induced(rest).expect("subset").unlabeled();
        let mut sub_trace = Vec::new();
        let sub = thdc::run(&h, &(r(2) * alpha), &Rational::zero(), deadline, &mut sub_trace)?;
        let labels: Vec<usize> = rest.to_vec();
        let host = |s: VertexSet| -> VertexSet { s.iter().map(|v| labels[v]).collect() };
        for s in sub_trace {
            step(trace, &format!("split:{}", s.step), s.note);
        }
        let Outcome::Certificate(StabilityCertificate {
            branch: Branch::Partition(pb),
            ..
        }) = sub
        else {
            step(
                trace,
                "split",
                "the split procedure on G - M0 did not produce two parts",
            );
            return Ok(stuck(
                "split",
                "two parts of G - M0 from the split procedure",
                stages,
                checks,
            ));
        };
        let m1 = host(pb.removed);
        let [v1, v2] = ordered(host(pb.parts[0]), host(pb.parts[1]));
        stages.insert("M1".to_string(), m1);
        let v0 = m0 | m1;
        partition_checks(g, &nr, alpha, beta, v0, v1, v2, &mut checks);
        return Ok(partition(v0, v1, v2, Structure::Split, stages, checks));
    }

    let g0 = g.vertices() - m;
    if g0.is_empty() {
        step(trace, "remainder", "nothing is left after peeling");
        return Ok(stuck("remainder", "nonempty G - M", stages, checks));
    }
    let h0 = g.induced(g0).expect("subset");
    if let Some(bp) = h0.bipartition() {
        let [v1, v2] = ordered(h0.to_host_set(bp.smaller), h0.to_host_set(bp.larger));
        step(
            trace,
            "bipartite",
            format!("classes of sizes {} and {}", v1.len(), v2.len()),
        );
        if v1.is_empty() {
            return Ok(stuck("bipartite", "two nonempty classes of G - M", stages, checks));
        }
        // |V1| = (1/2 - x)(|V1| + |V2|)
        let s = r(v1.len() + v2.len());
        let x = q(1, 2) - r(v1.len()) / &s;
        checks.push(Check::new(
            "class-balance",
            x.square(),
            Relation::Le,
            r(100) * (alpha + beta),
        ));
        partition_checks(g, &nr, alpha, beta, m, v1, v2, &mut checks);
        return Ok(partition(m, v1, v2, Structure::Bipartite, stages, checks));
    }
    if let Some(k) = small_cut(g, g0) {
        stages.insert("K".to_string(), k);
        let comps = g.components_within(g0 - k);
        step(
            trace,
            "cut",
            format!("K = {:?}; {} components remain", k.to_vec(), comps.len()),
        );
        if comps.len() != 2 {
            return Ok(stuck("cut", "exactly two components of G - M - K", stages, checks));
        }
        let [v1, v2] = ordered(comps[0], comps[1]);
        let in4 = Check::new(
            "larger-part-long-cycle-threshold",
            Expr::count(v2.len()),
            Relation::Ge,
            Expr::with_sqrt(&nr / &r(2), r(5) * &nr, alpha + &(r(2) * beta)).expect("nonnegative"),
        );
        step(trace, "cut", format!("|V1| = {}, |V2| = {}; {in4}", v1.len(), v2.len()));
        if in4.holds {
            checks.push(in4);
            let (complete, witnesses, missing) = cover_within(g, v2, required, deadline)?;
            step(
                trace,
                "larger-part-cycles",
                format!("lengths 3..={required} in G[V2]; missing {missing:?}"),
            );
            if complete {
                return Ok(cycles(required, witnesses));
            }
            return Ok(stuck(
                "larger-part-cycles",
                "cycles of every length up to the required bound in G[V2]",
                stages,
                checks,
            ));
        }
        checks.push(in4);
        let v0 = m | k;
        partition_checks(g, &nr, alpha, beta, v0, v1, v2, &mut checks);
        return Ok(partition(v0, v1, v2, Structure::Split, stages, checks));
    }
    let cov = cover_range(g, required, deadline)?;
    step(
        trace,
        "two-connected",
        format!(
            "G - M is 2-connected and not bipartite; lengths 3..={required}, missing {:?}",
            cov.missing
        ),
    );
    if cov.complete() {
        return Ok(cycles(required, cov.witnesses));
    }
    Ok(stuck(
        "two-connected",
        "cycles of every length up to the required bound",
        stages,
        checks,
    ))
}

fn partition(
    v0: VertexSet,
    v1: VertexSet,
    v2: VertexSet,
    structure: Structure,
    stages: BTreeMap<String, VertexSet>,
    checks: Vec<Check>,
) -> Outcome {
    Outcome::Certificate(StabilityCertificate {
        procedure: Procedure::Th3par,
        branch: Branch::Partition(PartitionBranch {
            removed: v0,
            parts: [v1, v2],
            structure,
            stages,
            checks,
        }),
    })
}

#[allow(clippy::too_many_arguments)]
fn partition_checks(
    g: &Graph,
    nr: &Rational,
    alpha: &Rational,
    beta: &Rational,
    v0: VertexSet,
    v1: VertexSet,
    v2: VertexSet,
    checks: &mut Vec<Check>,
) {
    let r = Rational::from_usize;
    let half = nr / &r(2);
    let spread = |sign: i64| {
        Expr::with_sqrt(half.clone(), Rational::integer(10 * sign) * nr, alpha + beta).expect("nonnegative")
    };
    checks.push(Check::new(
        "removed-size",
        Expr::count(v0.len()),
        Relation::Lt,
        r(2000) * alpha * nr,
    ));
    checks.push(Check::new(
        "part-lower",
        Expr::count(v1.len()),
        Relation::Gt,
        spread(-1),
    ));
    checks.push(Check::new(
        "parts-ordered",
        Expr::count(v1.len()),
        Relation::Le,
        Expr::count(v2.len()),
    ));
    checks.push(Check::new("part-upper", Expr::count(v2.len()), Relation::Lt, spread(1)));
    checks.push(Check::new(
        "remainder-min-degree",
        Expr::count(g.min_degree_within(v1 | v2)),
        Relation::Ge,
        r(2) * nr / r(5),
    ));
}
