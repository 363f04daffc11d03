//! Re-derives every claim of a stability certificate from the graph alone.
//! Nothing here calls the construction code: stages are recomputed from
//! degree and component primitives and each inequality is rebuilt from its
//! own formula before being compared with the stored one.

use std::collections::BTreeMap;

use crate::cycles::validate_cycle;
use crate::graph::Graph;
use crate::rational::{Check, Expr, Rational, Relation};
use crate::report::CheckReport;
use crate::vertex_set::VertexSet;

use super::{
    Branch, CycleBranch, CycleRequirement, DecompositionParams, PartitionBranch, Procedure, StabilityCertificate,
    Structure,
};

pub fn verify_stability_certificate(
    g: &Graph,
    cert: &StabilityCertificate,
    params: &DecompositionParams,
) -> CheckReport {
    let mut rep = CheckReport::new();
    match &cert.branch {
        Branch::Cycles(cb) => verify_cycles(g, cert.procedure, cb, params, &mut rep),
        Branch::Partition(pb) => verify_partition(g, cert.procedure, pb, params, &mut rep),
    }
    rep
}

fn rat(v: usize) -> Rational {
    Rational::from(v)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn ceil_of(x: Rational) -> usize {
    x.ceil_usize()
}

fn verify_cycles(
    g: &Graph,
    procedure: Procedure,
    cb: &CycleBranch,
    params: &DecompositionParams,
    rep: &mut CheckReport,
) {
    let n = rat(g.n());
    let expected = match procedure {
        Procedure::Thdc => CycleRequirement::LongCycle {
            min_length: ceil_of((half() + &params.alpha) * &n),
        },
        Procedure::Cycth => CycleRequirement::Pancyclic {
            up_to: ceil_of((half() + &params.gamma) * &n),
        },
        Procedure::Th3par => CycleRequirement::Pancyclic {
            up_to: ceil_of((half() + &params.alpha) * &n),
        },
    };
    rep.push(
        "requirement-matches-params",
        cb.requirement == expected,
        format!("expected {expected:?}, found {:?}", cb.requirement),
    );
    let mut valid_lengths = Vec::new();
    for w in &cb.witnesses {
        let verdict = validate_cycle(g, &w.cycle);
        let ok = verdict.is_ok() && w.cycle.len() == w.length;
        let detail = match verdict {
            Err(e) => e.to_string(),
            Ok(()) if !ok => format!("records length {} for {} vertices", w.length, w.cycle.len()),
            Ok(()) => String::new(),
        };
        rep.push(format!("witness-{}", w.length), ok, detail);
        if ok {
            valid_lengths.push(w.length);
        }
    }
    match cb.requirement {
        CycleRequirement::LongCycle { min_length } => {
            let ok = valid_lengths.iter().any(|&l| l >= min_length);
            rep.push(
                "coverage",
                ok,
                format!("needs one valid cycle of length >= {min_length}"),
            );
        }
        CycleRequirement::Pancyclic { up_to } => {
            let missing: Vec<usize> = (3..=up_to).filter(|t| !valid_lengths.contains(t)).collect();
            rep.push("coverage", missing.is_empty(), format!("missing lengths {missing:?}"));
        }
    }
}

fn low_degree(g: &Graph, within: VertexSet, num: usize, den: usize) -> VertexSet {
    let n = g.n();
    within
        .iter()
        .filter(|&v| den * (g.neighbors(v) & within).len() <= num * n)
        .collect()
}

fn verify_partition(
    g: &Graph,
    procedure: Procedure,
    pb: &PartitionBranch,
    params: &DecompositionParams,
    rep: &mut CheckReport,
) {
    let all = g.vertices();
    let [p1, p2] = pb.parts;
    let in_range = pb.removed.is_subset(all)
        && p1.is_subset(all)
        && p2.is_subset(all)
        && pb.stages.values().all(|s| s.is_subset(all));
    rep.push("vertices-in-range", in_range, "");
    if !in_range {
        return;
    }
    let disjoint = pb.removed.is_disjoint(p1) && pb.removed.is_disjoint(p2) && p1.is_disjoint(p2);
    let covers = (pb.removed | p1 | p2) == all;
    rep.push(
        "partition",
        disjoint && covers && !p1.is_empty() && !p2.is_empty(),
        format!("disjoint: {disjoint}, covers: {covers}"),
    );
    match pb.structure {
        Structure::Split => {
            let cross: Vec<(usize, usize)> = p1
                .iter()
                .flat_map(|u| (g.neighbors(u) & p2).iter().map(move |v| (u, v)))
                .collect();
            rep.push(
                "no-cross-edges",
                cross.is_empty(),
                cross.first().map(|e| format!("edge {e:?}")).unwrap_or_default(),
            );
            if procedure != Procedure::Cycth {
                let ok = [p1, p2].iter().all(|&p| is_connected(g, p));
                rep.push("parts-connected", ok, "");
            }
        }
        Structure::Bipartite => {
            let inside: Option<(usize, usize)> = [p1, p2]
                .iter()
                .find_map(|&p| p.iter().find_map(|u| (g.neighbors(u) & p).min().map(|v| (u, v))));
            rep.push(
                "parts-independent",
                inside.is_none(),
                inside.map(|e| format!("edge {e:?}")).unwrap_or_default(),
            );
        }
    }
    let sizes = match procedure {
        Procedure::Thdc => thdc_stages(g, pb, rep),
        Procedure::Cycth => cycth_stages(g, pb, rep),
        Procedure::Th3par => th3par_stages(g, pb, params, rep),
    };
    let Some(sizes) = sizes else {
        return;
    };
    let expected = match procedure {
        Procedure::Thdc => thdc_checks(g, pb, &sizes, &params.alpha, &params.beta),
        Procedure::Cycth => cycth_checks(g.n(), pb, &params.gamma),
        Procedure::Th3par => th3par_checks(g, pb, &sizes, &params.alpha, &params.beta),
    };
    compare_checks(&pb.checks, &expected, rep);
}

fn is_connected(g: &Graph, s: VertexSet) -> bool {
    let Some(start) = s.min() else {
        return false;
    };
    let mut seen = VertexSet::singleton(start);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier {
            next |= g.neighbors(v) & s;
        }
        frontier = next - seen;
        seen |= next;
    }
    seen == s
}

fn components(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut left = s;
    while let Some(v) = left.min() {
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for w in frontier {
                next |= g.neighbors(w) & s;
            }
            frontier = next - comp;
            comp |= next;
        }
        out.push(comp);
        left -= comp;
    }
    out
}

fn stage(pb: &PartitionBranch, name: &str, rep: &mut CheckReport) -> Option<VertexSet> {
    let s = pb.stages.get(name).copied();
    if s.is_none() {
        rep.push(format!("stage:{name}"), false, "missing");
    }
    s
}

/// Auxiliary sizes the size inequalities refer to.
type Sizes = BTreeMap<&'static str, usize>;

fn thdc_stages(g: &Graph, pb: &PartitionBranch, rep: &mut CheckReport) -> Option<Sizes> {
    let all = g.vertices();
    let m0 = stage(pb, "M0", rep)?;
    let k = stage(pb, "K", rep)?;
    let h1 = stage(pb, "H1", rep)?;
    let h2 = stage(pb, "H2", rep)?;
    let m2 = stage(pb, "M2", rep)?;
    rep.push("stage:M0", m0 == low_degree(g, all, 9, 40), "degree at most 9n/40");
    rep.push("stage:K", k.len() <= 1 && k.is_disjoint(m0), "");
    let mut comps = components(g, all - m0 - k);
    comps.sort();
    let mut hs = vec![h1, h2];
    hs.sort();
    rep.push(
        "stage:H",
        comps == hs,
        format!("{} components after removing M0 and K", comps.len()),
    );
    rep.push(
        "stage:M2",
        m2 == low_degree(g, h1 | h2, 9, 20),
        "degree in H1 + H2 at most 9n/20",
    );
    rep.push("stage:removed", pb.removed == (m0 | k | m2), "");
    let mut parts = vec![h1 - m2, h2 - m2];
    parts.sort();
    let mut stated = pb.parts.to_vec();
    stated.sort();
    rep.push("stage:parts", parts == stated, "");
    Some(Sizes::from([
        ("M0", m0.len()),
        ("M1", (m0 | k).len()),
        ("H1", h1.len().min(h2.len())),
        ("H2", h1.len().max(h2.len())),
        ("M2", m2.len()),
    ]))
}

fn cycth_stages(g: &Graph, pb: &PartitionBranch, rep: &mut CheckReport) -> Option<Sizes> {
    let sep = stage(pb, "separator", rep)?;
    let g1 = stage(pb, "G1", rep)?;
    let g2 = stage(pb, "G2", rep)?;
    rep.push("stage:separator", sep == pb.removed && sep.len() == 1, "");
    let [p1, p2] = pb.parts;
    let (a, b) = (g1 - sep, g2 - sep);
    let apart = (a.is_subset(p1) && b.is_subset(p2)) || (a.is_subset(p2) && b.is_subset(p1));
    rep.push("stage:separates", apart, "G1 and G2 fall on opposite sides");
    let _ = g;
    Some(Sizes::new())
}

fn th3par_stages(
    g: &Graph,
    pb: &PartitionBranch,
    params: &DecompositionParams,
    rep: &mut CheckReport,
) -> Option<Sizes> {
    let all = g.vertices();
    let n = g.n();
    let m = stage(pb, "M", rep)?;
    rep.push("stage:M", m == low_degree(g, all, 9, 20), "degree at most 9n/20");
    let mut sizes = Sizes::from([("M", m.len())]);
    if pb.stages.contains_key("M0") {
        let m0 = stage(pb, "M0", rep)?;
        let m1 = stage(pb, "M1", rep)?;
        let count = ceil_of(Rational::from(24usize) * &params.beta * rat(n));
        let first: VertexSet = m.iter().take(count).collect();
        rep.push("stage:M0", m0 == first, format!("first {count} vertices of M"));
        let big = rat(m.len()) >= Rational::from(20usize) * (&params.alpha + &(rat(2) * &params.beta)) * rat(n);
        rep.push("stage:M-large", big, "");
        rep.push("stage:removed", pb.removed == (m0 | m1) && m0.is_disjoint(m1), "");
        let rest = all - m0;
        sizes.insert("rest", rest.len());
        sizes.insert(
            "rest-edges",
            rest.iter().map(|v| (g.neighbors(v) & rest).len()).sum::<usize>() / 2,
        );
    } else if pb.stages.contains_key("K") {
        let k = stage(pb, "K", rep)?;
        rep.push("stage:K", k.len() <= 1 && k.is_disjoint(m), "");
        rep.push("stage:removed", pb.removed == (m | k), "");
        rep.push("stage:structure", pb.structure == Structure::Split, "");
    } else {
        rep.push("stage:removed", pb.removed == m, "");
        rep.push("stage:structure", pb.structure == Structure::Bipartite, "");
    }
    Some(sizes)
}

fn min_degree_in(g: &Graph, s: VertexSet) -> usize {
    s.iter().map(|v| (g.neighbors(v) & s).len()).min().unwrap_or(0)
}

fn thdc_checks(g: &Graph, pb: &PartitionBranch, sz: &Sizes, a: &Rational, b: &Rational) -> Vec<Check> {
    let n = rat(g.n());
    let [p1, p2] = pb.parts;
    let c = |v: usize| Expr::count(v);
    let lin = |x: i64, y: i64| (Rational::integer(x) * a + Rational::integer(y) * b) * &n;
    let mut out = vec![
        Check::new("low-degree-set-size", c(sz["M0"]), Relation::Lt, lin(20, 40)),
        Check::new("first-cut-size", c(sz["M1"]), Relation::Lt, lin(40, 40)),
        Check::new(
            "first-split-lower",
            c(sz["H1"]),
            Relation::Gt,
            half() * &n - lin(20, 40),
        ),
        Check::new("first-split-order", c(sz["H1"]), Relation::Le, c(sz["H2"])),
        Check::new(
            "first-split-upper",
            c(sz["H2"]),
            Relation::Lt,
            half() * &n + lin(20, 40),
        ),
    ];
    let rad = rat(1) - lin(16, 32) / &n - rat(32) / &n;
    if !rad.is_negative() {
        let quarter = &n / &rat(4);
        let root = Expr::with_sqrt(quarter.clone(), quarter, rad).expect("checked sign");
        out.push(Check::new(
            "first-split-quadratic-root",
            c(sz["H1"]),
            Relation::Ge,
            root,
        ));
    }
    out.extend([
        Check::new("second-peel-size", c(sz["M2"]), Relation::Le, lin(800, 1240)),
        Check::new("removed-size", c(pb.removed.len()), Relation::Lt, lin(840, 1680)),
        Check::new("part-lower", c(p1.len()), Relation::Gt, half() * &n - lin(840, 1680)),
        Check::new(
            "part-lower-as-stated",
            c(p1.len()),
            Relation::Gt,
            half() * &n - lin(840, 1680) * b,
        ),
        Check::new("parts-ordered", c(p1.len()), Relation::Le, c(p2.len())),
        Check::new("part-upper", c(p2.len()), Relation::Lt, half() * &n + lin(20, 40)),
        Check::new(
            "part1-min-degree",
            c(min_degree_in(g, p1)),
            Relation::Ge,
            rat(3) * &n / rat(7),
        ),
        Check::new(
            "part2-min-degree",
            c(min_degree_in(g, p2)),
            Relation::Ge,
            rat(3) * &n / rat(7),
        ),
    ]);
    out
}

fn cycth_checks(n: usize, pb: &PartitionBranch, gm: &Rational) -> Vec<Check> {
    let n = rat(n);
    let [p1, p2] = pb.parts;
    let c = |v: usize| Expr::count(v);
    let off = |k: usize| rat(k) * gm * &n;
    vec![
        Check::new("part-lower", c(p1.len()), Relation::Gt, half() * &n - off(900)),
        Check::new("parts-ordered", c(p1.len()), Relation::Le, c(p2.len())),
        Check::new("part-upper", c(p2.len()), Relation::Lt, half() * &n + off(900)),
        Check::new("part1-upper-derived", c(p1.len()), Relation::Lt, half() * &n + off(840)),
        Check::new("part2-upper-derived", c(p2.len()), Relation::Le, half() * &n + off(840)),
    ]
}

fn th3par_checks(g: &Graph, pb: &PartitionBranch, sz: &Sizes, a: &Rational, b: &Rational) -> Vec<Check> {
    let n = rat(g.n());
    let [v1, v2] = pb.parts;
    let c = |v: usize| Expr::count(v);
    let mut out = vec![Check::new(
        "low-degree-set-size",
        c(sz["M"]),
        Relation::Lt,
        (rat(20) * a + rat(40) * b) * &n,
    )];
    if let (Some(&rest), Some(&edges)) = (sz.get("rest"), sz.get("rest-edges")) {
        out.push(Check::new(
            "remainder-edge-density",
            c(edges),
            Relation::Gt,
            rat(rest) * rat(rest) / rat(4),
        ));
    } else if pb.structure == Structure::Bipartite {
        // |V1| = (1/2 - x)(|V1| + |V2|)
        let x = half() - rat(v1.len()) / rat(v1.len() + v2.len());
        out.push(Check::new(
            "class-balance",
            x.square(),
            Relation::Le,
            rat(100) * (a + b),
        ));
    } else {
        let bound = Expr::with_sqrt(half() * &n, rat(5) * &n, a + &(rat(2) * b)).expect("nonnegative");
        out.push(Check::new(
            "larger-part-long-cycle-threshold",
            c(v2.len()),
            Relation::Ge,
            bound,
        ));
    }
    let sqrt_side =
        |sign: i64| Expr::with_sqrt(half() * &n, Rational::integer(10 * sign) * &n, a + b).expect("nonnegative");
    out.extend([
        Check::new("removed-size", c(pb.removed.len()), Relation::Lt, rat(2000) * a * &n),
        Check::new("part-lower", c(v1.len()), Relation::Gt, sqrt_side(-1)),
        Check::new("parts-ordered", c(v1.len()), Relation::Le, c(v2.len())),
        Check::new("part-upper", c(v2.len()), Relation::Lt, sqrt_side(1)),
        Check::new(
            "remainder-min-degree",
            c(min_degree_in(g, v1 | v2)),
            Relation::Ge,
            rat(2) * &n / rat(5),
        ),
    ]);
    out
}

fn compare_checks(stored: &[Check], expected: &[Check], rep: &mut CheckReport) {
    let mut stored_ids: Vec<&str> = stored.iter().map(|c| c.id.as_str()).collect();
    let mut expected_ids: Vec<&str> = expected.iter().map(|c| c.id.as_str()).collect();
    stored_ids.sort_unstable();
    expected_ids.sort_unstable();
    rep.push(
        "checks-complete",
        stored_ids == expected_ids,
        format!("stored {stored_ids:?}, expected {expected_ids:?}"),
    );
    for want in expected {
        let name = format!("arith:{}", want.id);
        match stored.iter().find(|c| c.id == want.id) {
            None => rep.push(name, false, "missing"),
            Some(have) => {
                let consistent = have.reevaluate() == Ok(have.holds);
                let ok = consistent && have == want;
                let detail = if ok {
                    String::new()
                } else {
                    format!("stored {have}, recomputed {want}")
                };
                rep.push(name, ok, detail);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::rational::q;
    use crate::stability::{decompose_cycth, decompose_th3par, decompose_thdc, Outcome};

    fn partition_of(cert: &StabilityCertificate) -> PartitionBranch {
        match &cert.branch {
            Branch::Partition(pb) => pb.clone(),
            other => panic!("{other:?}"),
        }
    }

    fn all_pass(rep: &CheckReport) {
        assert!(rep.failures().is_empty(), "{:?}", rep.failures());
    }

    #[test]
    fn thdc_partition_verifies_and_tampering_is_caught() {
        let g = named::disjoint_union(&named::complete(13), &named::complete(13));
        let p = DecompositionParams::alpha_beta(q(1, 50), q(1, 20));
        let rep = decompose_thdc(&g, &p).unwrap();
        let cert = rep.certificate().unwrap().clone();
        all_pass(&verify_stability_certificate(&g, &cert, &p));

        let mut bad = cert.clone();
        let mut pb = partition_of(&bad);
        pb.parts[0].remove(0);
        pb.removed.insert(0);
        bad.branch = Branch::Partition(pb);
        let v = verify_stability_certificate(&g, &bad, &p);
        assert!(!v.get("stage:removed").unwrap().passed);
        assert!(!v.get("arith:removed-size").unwrap().passed);

        let mut bad = cert.clone();
        let mut pb = partition_of(&bad);
        pb.checks.pop();
        bad.branch = Branch::Partition(pb);
        assert!(
            !verify_stability_certificate(&g, &bad, &p)
                .get("checks-complete")
                .unwrap()
                .passed
        );

        let mut gx = g.clone();
        gx.add_edge(0, 13).unwrap();
        let v = verify_stability_certificate(&gx, &cert, &p);
        assert!(!v.get("no-cross-edges").unwrap().passed);
    }

    #[test]
    fn cycle_certificates_verify() {
        let g = named::complete(10);
        let p = DecompositionParams::gamma(q(1, 100));
        let rep = decompose_cycth(&g, &q(1, 100)).unwrap();
        let cert = rep.certificate().unwrap().clone();
        all_pass(&verify_stability_certificate(&g, &cert, &p));

        let mut bad = cert.clone();
        if let Branch::Cycles(cb) = &mut bad.branch {
            cb.witnesses.retain(|w| w.length != 4);
        }
        assert!(
            !verify_stability_certificate(&g, &bad, &p)
                .get("coverage")
                .unwrap()
                .passed
        );
        let wrong = DecompositionParams::gamma(q(1, 5));
        let v = verify_stability_certificate(&g, &cert, &wrong);
        assert!(!v.get("requirement-matches-params").unwrap().passed);

        let g = named::complete(25);
        let p = DecompositionParams::alpha_beta(q(1, 50), q(0, 1));
        let cert = decompose_thdc(&g, &p).unwrap().certificate().unwrap().clone();
        all_pass(&verify_stability_certificate(&g, &cert, &p));
        let mut h = g.clone();
        h.remove_edge(0, 1).unwrap();
        assert!(!verify_stability_certificate(&h, &cert, &p).failures().is_empty());
    }

    #[test]
    fn cycth_separator_verifies() {
        let g = named::cliques_sharing_vertex(25, 27);
        let p = DecompositionParams::gamma(q(1, 20));
        let rep = decompose_cycth(&g, &q(1, 20)).unwrap();
        let cert = rep.certificate().unwrap().clone();
        all_pass(&verify_stability_certificate(&g, &cert, &p));
    }

    #[test]
    fn th3par_certificates_verify() {
        let g = named::complete_bipartite(13, 13);
        let p = DecompositionParams::alpha_beta(q(1, 25), q(1, 100));
        let rep = decompose_th3par(&g, &p).unwrap();
        let cert = rep.certificate().unwrap().clone();
        all_pass(&verify_stability_certificate(&g, &cert, &p));
        let mut h = g.clone();
        h.add_edge(0, 1).unwrap();
        assert!(
            !verify_stability_certificate(&h, &cert, &p)
                .get("parts-independent")
                .unwrap()
                .passed
        );

        let mut g = named::disjoint_union(&named::complete(13), &named::complete(13));
        g.add_edge(0, 13).unwrap();
        let p = DecompositionParams::alpha_beta(q(1, 25), q(1, 20));
        let rep = decompose_th3par(&g, &p).unwrap();
        let Outcome::Certificate(cert) = &rep.outcome else {
            panic!("{rep:?}");
        };
        all_pass(&verify_stability_certificate(&g, cert, &p));
    }
}
