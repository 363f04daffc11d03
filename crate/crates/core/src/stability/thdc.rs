//! Either a cycle of length at least `(1/2 + α)n`, or a small removed set
//! leaving two large components of high minimum degree.

use std::collections::BTreeMap;

use crate::cycles::{longest_cycle_within, CycleWitness, Deadline, Timeout};
use crate::graph::Graph;
use crate::rational::{q, Check, Expr, Rational, Relation};
use crate::vertex_set::VertexSet;

use super::{
    ceil_times_n, ordered, peel_within, small_cut, step, Branch, CycleBranch, CycleRequirement, DecompositionParams,
    DecompositionReport, Outcome, PartitionBranch, Procedure, StabilityCertificate, StabilityError, Structure, Stuck,
    TraceStep,
};

pub fn decompose_thdc(g: &Graph, params: &DecompositionParams) -> Result<DecompositionReport, StabilityError> {
    decompose_thdc_within(g, params, &Deadline::NONE)
}

pub fn decompose_thdc_within(
    g: &Graph,
    params: &DecompositionParams,
    deadline: &Deadline,
) -> Result<DecompositionReport, StabilityError> {
    let g = g.clone().unlabeled();
    params.validate(Procedure::Thdc, g.n())?;
    let hypothesis = hypothesis_check(&g, &params.beta);
    if params.enforce_paper_range && !hypothesis.holds {
        return Err(StabilityError::HypothesisViolated(hypothesis.to_string()));
    }
    let mut trace = Vec::new();
    let outcome = run(&g, &params.alpha, &params.beta, deadline, &mut trace)?;
    Ok(DecompositionReport {
        procedure: Procedure::Thdc,
        n: g.n(),
        e: g.edge_count(),
        params: params.clone(),
        hypothesis,
        trace,
        outcome,
    })
}

/// `e > (1/4 - β)n²`.
pub(super) fn hypothesis_check(g: &Graph, beta: &Rational) -> Check {
    let n = Rational::from(g.n());
    Check::new(
        "hypothesis",
        Expr::count(g.edge_count()),
        Relation::Gt,
        (q(1, 4) - beta) * &n * &n,
    )
}

fn stuck(step: &str, missing: &str, partial: BTreeMap<String, VertexSet>, checks: Vec<Check>) -> Outcome {
    Outcome::Stuck(Stuck {
        step: step.into(),
        missing: missing.into(),
        partial,
        checks,
    })
}

/// The procedure on an unlabelled graph; shared with the other
/// decompositions, which call it on subgraphs.
pub(super) fn run(
    g: &Graph,
    alpha: &Rational,
    beta: &Rational,
    deadline: &Deadline,
    trace: &mut Vec<TraceStep>,
) -> Result<Outcome, StabilityError> {
    let n = g.n();
    let nr = Rational::from(n);
    let r = Rational::from_usize;
    let ab = alpha + &(beta * &r(2));

    let longest = longest_cycle_within(g, deadline).map_err(|_| Timeout)?;
    let c = longest.length;
    let long_enough = r(c) >= (q(1, 2) + alpha) * &nr;
    step(
        trace,
        "long-cycle",
        format!("c = {c}, threshold (1/2 + alpha)n = {}", (q(1, 2) + alpha) * &nr),
    );
    if let (true, Some(cycle)) = (long_enough, longest.witness) {
        let min_length = ceil_times_n(&(q(1, 2) + alpha), n);
        return Ok(Outcome::Certificate(StabilityCertificate {
            procedure: Procedure::Thdc,
            branch: Branch::Cycles(CycleBranch {
                requirement: CycleRequirement::LongCycle { min_length },
                witnesses: vec![CycleWitness { length: c, cycle }],
            }),
        }));
    }

    let mut stages = BTreeMap::new();
    let mut checks = Vec::new();
    let m0 = peel_within(g, g.vertices(), 9, 40, n);
    stages.insert("M0".to_string(), m0);
    step(
        trace,
        "low-degree-peel",
        format!("|M0| = {} (degree at most 9n/40)", m0.len()),
    );
    checks.push(Check::new(
        "low-degree-set-size",
        Expr::count(m0.len()),
        Relation::Lt,
        (r(20) * alpha + r(40) * beta) * &nr,
    ));
    let rest = g.vertices() - m0;
    let Some(k) = small_cut(g, rest) else {
        let what = if rest.len() < 2 {
            "remainder after peeling has fewer than two vertices"
        } else {
            "remainder after peeling is 2-connected"
        };
        step(trace, "cut-set", what);
        return Ok(stuck(
            "cut-set",
            "set K with |K| <= 1 disconnecting G - M0",
            stages,
            checks,
        ));
    };
    stages.insert("K".to_string(), k);
    step(trace, "cut-set", format!("K = {:?}", k.to_vec()));

    let comps = g.components_within(rest - k);
    if let Some(small) = comps.iter().find(|c| 3 * c.len() <= n) {
        step(
            trace,
            "components",
            format!("component {:?} has order at most n/3", small.to_vec()),
        );
        return Ok(stuck(
            "components",
            "two components of G - M0 - K, each of order above n/3",
            stages,
            checks,
        ));
    }
    debug_assert_eq!(comps.len(), 2, "components above n/3 number at most two");
    let [h1, h2] = ordered(comps[0], comps[1]);
    stages.insert("H1".to_string(), h1);
    stages.insert("H2".to_string(), h2);
    step(trace, "components", format!("|H1| = {}, |H2| = {}", h1.len(), h2.len()));
    let m1 = m0 | k;
    checks.push(Check::new(
        "first-cut-size",
        Expr::count(m1.len()),
        Relation::Lt,
        r(40) * (alpha + beta) * &nr,
    ));
    checks.push(Check::new(
        "first-split-lower",
        Expr::count(h1.len()),
        Relation::Gt,
        (q(1, 2) - r(20) * alpha - r(40) * beta) * &nr,
    ));
    checks.push(Check::new(
        "first-split-order",
        Expr::count(h1.len()),
        Relation::Le,
        Expr::count(h2.len()),
    ));
    checks.push(Check::new(
        "first-split-upper",
        Expr::count(h2.len()),
        Relation::Lt,
        (q(1, 2) + r(20) * alpha + r(40) * beta) * &nr,
    ));
    let radicand = r(1) - r(16) * &ab - r(32) / &nr;
    if !radicand.is_negative() {
        let quarter = &nr / &r(4);
        let root = Expr::with_sqrt(quarter.clone(), quarter, radicand).expect("nonnegative radicand");
        checks.push(Check::new(
            "first-split-quadratic-root",
            Expr::count(h1.len()),
            Relation::Ge,
            root,
        ));
    } else {
        step(
            trace,
            "first-split-quadratic-root",
            "radicand negative; bound not evaluated",
        );
    }

    let h = h1 | h2;
    let m2 = peel_within(g, h, 9, 20, n);
    stages.insert("M2".to_string(), m2);
    step(
        trace,
        "second-peel",
        format!("|M2| = {} (degree in H1 + H2 at most 9n/20)", m2.len()),
    );
    checks.push(Check::new(
        "second-peel-size",
        Expr::count(m2.len()),
        Relation::Le,
        (r(800) * alpha + r(1240) * beta) * &nr,
    ));
    let removed = m1 | m2;
    let [p1, p2] = ordered(h1 - m2, h2 - m2);
    if p1.is_empty() {
        step(trace, "parts", "a part is empty after the second peel");
        return Ok(stuck("parts", "nonempty parts H_i - M2", stages, checks));
    }
    for p in [p1, p2] {
        if !g.is_connected_within(p) {
            step(trace, "parts", format!("part {:?} is disconnected", p.to_vec()));
            return Ok(stuck("parts", "connected parts H_i - M2", stages, checks));
        }
    }
    partition_checks(g, &nr, beta, &ab, removed, p1, p2, &mut checks);
    step(
        trace,
        "parts",
        format!("|M| = {}, parts {} and {}", removed.len(), p1.len(), p2.len()),
    );
    Ok(Outcome::Certificate(StabilityCertificate {
        procedure: Procedure::Thdc,
        branch: Branch::Partition(PartitionBranch {
            removed,
            parts: [p1, p2],
            structure: Structure::Split,
            stages,
            checks,
        }),
    }))
}

#[allow(clippy::too_many_arguments)]
fn partition_checks(
    g: &Graph,
    nr: &Rational,
    beta: &Rational,
    ab: &Rational,
    removed: VertexSet,
    p1: VertexSet,
    p2: VertexSet,
    checks: &mut Vec<Check>,
) {
    let r = Rational::from_usize;
    checks.push(Check::new(
        "removed-size",
        Expr::count(removed.len()),
        Relation::Lt,
        r(840) * ab * nr,
    ));
    checks.push(Check::new(
        "part-lower",
        Expr::count(p1.len()),
        Relation::Gt,
        (q(1, 2) - r(840) * ab) * nr,
    ));
    checks.push(Check::new(
        "part-lower-as-stated",
        Expr::count(p1.len()),
        Relation::Gt,
        (q(1, 2) - r(840) * ab * beta) * nr,
    ));
    checks.push(Check::new(
        "parts-ordered",
        Expr::count(p1.len()),
        Relation::Le,
        Expr::count(p2.len()),
    ));
    checks.push(Check::new(
        "part-upper",
        Expr::count(p2.len()),
        Relation::Lt,
        (q(1, 2) + r(20) * ab) * nr,
    ));
    for (id, p) in [("part1-min-degree", p1), ("part2-min-degree", p2)] {
        checks.push(Check::new(
            id,
            Expr::count(g.min_degree_within(p)),
            Relation::Ge,
            r(3) * nr / r(7),
        ));
    }
}
