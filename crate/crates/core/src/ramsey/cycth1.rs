//! Colourings of `K_p`, `p = ⌊(2−β)n⌋`, with no monochromatic `C_n`: one
//! vertex `u` and a split `U1 ∪ U2` of the rest into two cliques of one
//! colour joined completely in the other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, TwoColoring};
use crate::cycles::{cycle_of_length, Deadline, Timeout};
use crate::graph::Graph;
use crate::rational::{Check, Expr, Rational, Relation};
use crate::report::CheckReport;
use crate::vertex_set::VertexSet;

use super::le4::le4_extract;
use super::{mono_cycle, MonoCycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    /// Even cycle, extraction on its vertices, classification, star removal.
    Pipeline,
    /// Search over every removed vertex and colour orientation.
    ExhaustiveSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyCertificate {
    pub n: usize,
    pub beta: Rational,
    pub p: usize,
    pub u: usize,
    /// The smaller part; ties by smaller minimum.
    pub u1: VertexSet,
    pub u2: VertexSet,
    /// The colour in which `U1` and `U2` are cliques; the other colour
    /// carries exactly the cross pairs.
    pub orientation: Color,
    pub method: CertificateMethod,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Cycth1Error {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("hypothesis unsatisfiable: {} C_{} {:?}", .0.color.letter(), .0.cycle.len(), .0.cycle)]
    HypothesisUnsatisfiable(MonoCycle),
    #[error("library error: {0}")]
    InternalContradiction(String),
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

/// `⌊(2 − β)n⌋`.
pub fn host_order(n: usize, beta: &Rational) -> usize {
    ((Rational::integer(2) - beta) * Rational::from_usize(n)).floor_usize()
}

fn check_params(n: usize, beta: &Rational) -> Result<usize, Cycth1Error> {
    if n < 4 {
        return Err(Cycth1Error::BadParameters(format!("n = {n} is below 4")));
    }
    let cap = Rational::new((n / 2) as i64, n as i64);
    if !beta.is_positive() || *beta > cap {
        return Err(Cycth1Error::BadParameters(format!("beta = {beta} not in (0, {cap}]")));
    }
    Ok(host_order(n, beta))
}

/// `(1 − β)n − 1 < |U1| ≤ |U2| < n`.
pub fn thin_checks(n: usize, beta: &Rational, s1: usize, s2: usize) -> Vec<Check> {
    let nr = Rational::from_usize(n);
    vec![
        Check::new(
            "thin-lower",
            Expr::count(s1),
            Relation::Gt,
            (Rational::one() - beta) * &nr - Rational::one(),
        ),
        Check::new("thin-order", Expr::count(s1), Relation::Le, Expr::count(s2)),
        Check::new("thin-upper", Expr::count(s2), Relation::Lt, Expr::count(n)),
    ]
}

pub fn cycth1_certificate(col: &TwoColoring, n: usize, beta: &Rational) -> Result<RamseyCertificate, Cycth1Error> {
    cycth1_certificate_within(col, n, beta, &Deadline::NONE)
}

pub fn cycth1_certificate_within(
    col: &TwoColoring,
    n: usize,
    beta: &Rational,
    deadline: &Deadline,
) -> Result<RamseyCertificate, Cycth1Error> {
    let p = check_params(n, beta)?;
    if col.n() != p || !col.is_complete_host() {
        return Err(Cycth1Error::BadParameters(format!(
            "host must be complete on {p} vertices, found order {} with {} edges",
            col.n(),
            col.host().edge_count()
        )));
    }
    if let Some(m) = mono_cycle(col, n, deadline)? {
        return Err(Cycth1Error::HypothesisUnsatisfiable(m));
    }
    if n.is_multiple_of(2) {
        return Err(Cycth1Error::InternalContradiction(format!(
            "no monochromatic C_{n} in a colouring of K_{p}, although one is forced"
        )));
    }
    let k = (n - 1) / 2;
    let make = |u: usize, a: VertexSet, b: VertexSet, orientation: Color, method: CertificateMethod| {
        let [u1, u2] = crate::stability::ordered(a, b);
        RamseyCertificate {
            n,
            beta: beta.clone(),
            p,
            u,
            u1,
            u2,
            orientation,
            method,
            checks: thin_checks(n, beta, u1.len(), u2.len()),
        }
    };
    let failure = match pipeline(col, k, deadline)? {
        Ok((u, a, b, orientation)) => {
            let cert = make(u, a, b, orientation, CertificateMethod::Pipeline);
            if cert.checks.iter().all(|c| c.holds) {
                return Ok(cert);
            }
            "the pipeline partition violates the size bounds".to_string()
        }
        Err(why) => why,
    };
    if k >= 3 {
        return Err(Cycth1Error::InternalContradiction(failure));
    }
    // For k = 2 the pipeline's later steps are not backed by the argument.
    for u in 0..p {
        for orientation in [Color::Red, Color::Blue] {
            if let Some((a, b)) = split_at(col, u, orientation) {
                let cert = make(u, a, b, orientation, CertificateMethod::ExhaustiveSearch);
                if cert.checks.iter().all(|c| c.holds) {
                    return Ok(cert);
                }
            }
        }
    }
    Err(Cycth1Error::InternalContradiction(format!(
        "pipeline failed ({failure}) and no vertex admits a certificate"
    )))
}

type Split = (usize, VertexSet, VertexSet, Color);

fn pipeline(col: &TwoColoring, k: usize, deadline: &Deadline) -> Result<Result<Split, String>, Timeout> {
    let Some(even) = mono_cycle(col, 2 * k + 2, deadline)? else {
        return Ok(Err(format!("no monochromatic C_{}", 2 * k + 2)));
    };
    let bc = even.color;
    let rc = bc.other();
    let (red, blue) = (col.class(rc), col.class(bc));
    let w: VertexSet = even.cycle.iter().copied().collect();
    let h = blue.induced(w).expect("in range");
    let ext = match le4_extract(&h) {
        Ok(e) => e,
        Err(e) => return Ok(Err(format!("extraction on the even cycle failed: {e}"))),
    };
    let centre = h.label(ext.u);
    let (own, other) = if ext.u1.contains(ext.u) {
        (ext.u1, ext.u2)
    } else {
        (ext.u2, ext.u1)
    };
    let w1 = h.to_host_set(own).without(centre);
    let w2 = h.to_host_set(other);
    let rest = col.host().vertices() - w1 - w2;
    let x1: VertexSet = rest.iter().filter(|&v| blue.neighbors(v).is_disjoint(w1)).collect();
    let x2 = rest - x1;
    if let Some(v) = x2.iter().find(|&v| !blue.neighbors(v).is_disjoint(w2)) {
        return Ok(Err(format!(
            "vertex {v} has neighbours of the cycle colour in both W1 and W2"
        )));
    }
    let (v1, v2) = (x1 | w1, x2 | w2);
    let star = red.edges_between(v1, v2);
    let candidates: Vec<usize> = match star.as_slice() {
        [] => vec![0],
        [(a, b), rest @ ..] => [*a, *b]
            .into_iter()
            .filter(|&c| rest.iter().all(|&(x, y)| x == c || y == c))
            .collect(),
    };
    if candidates.is_empty() {
        return Ok(Err(format!(
            "{} cross edges of the clique colour contain two disjoint ones",
            star.len()
        )));
    }
    for u in candidates {
        let (a, b) = (v1.without(u), v2.without(u));
        if structure_holds(red, blue, a, b) {
            return Ok(Ok((u, a, b, rc)));
        }
    }
    Ok(Err(
        "removing the star centre does not leave the clique structure".into()
    ))
}

fn structure_holds(clique: &Graph, cross: &Graph, a: VertexSet, b: VertexSet) -> bool {
    !a.is_empty()
        && !b.is_empty()
        && clique.is_clique(a).expect("in range")
        && clique.is_clique(b).expect("in range")
        && cross.is_complete_bipartite_between(a, b).expect("disjoint")
}

/// The split of `K_p − u` into the two components of the orientation
/// colour, when that colour is two cliques joined completely in the other.
fn split_at(col: &TwoColoring, u: usize, orientation: Color) -> Option<(VertexSet, VertexSet)> {
    let clique = col.class(orientation);
    let comps = clique.components_within(col.host().vertices().without(u));
    let [a, b] = comps.as_slice() else {
        return None;
    };
    structure_holds(clique, col.class(orientation.other()), *a, *b).then_some((*a, *b))
}

/// Whether any `(u, U1, U2)` and orientation satisfies the structure and the
/// size bounds, by direct enumeration of vertex subsets.
pub fn certificate_exists(col: &TwoColoring, n: usize, beta: &Rational) -> bool {
    let p = col.n();
    let lower = (Rational::one() - beta) * Rational::from_usize(n) - Rational::one();
    for u in 0..p {
        let others: Vec<usize> = (0..p).filter(|&v| v != u).collect();
        for mask in 0u64..1 << (others.len() - 1) {
            // others[0] always lies on the first side
            let side = |i: usize| i > 0 && mask >> (i - 1) & 1 == 1;
            let first = others.iter().enumerate().filter(|&(i, _)| !side(i)).count();
            let second = others.len() - first;
            let (s1, s2) = (first.min(second), first.max(second));
            if s1 == 0 || Rational::from_usize(s1) <= lower || s2 >= n {
                continue;
            }
            for orientation in [Color::Red, Color::Blue] {
                let ok = others.iter().enumerate().all(|(i, &x)| {
                    others.iter().enumerate().skip(i + 1).all(|(j, &y)| {
                        let want = if side(i) == side(j) {
                            orientation
                        } else {
                            orientation.other()
                        };
                        col.color_of(x, y) == Some(want)
                    })
                });
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

/// Re-checks a certificate against the colouring alone, in the stated
/// orientation only.
pub fn verify_ramsey_certificate(
    col: &TwoColoring,
    cert: &RamseyCertificate,
    n: usize,
    beta: &Rational,
) -> CheckReport {
    let mut rep = CheckReport::new();
    let p = col.n();
    let expected_p = host_order(n, beta);
    rep.push(
        "parameters",
        cert.n == n && cert.beta == *beta && cert.p == expected_p,
        format!("certificate for n = {}, beta = {}, p = {}", cert.n, cert.beta, cert.p),
    );
    rep.push(
        "host-order",
        p == expected_p,
        format!("host order {p}, expected {expected_p}"),
    );
    rep.push("host-complete", col.is_complete_host(), "");
    let all = col.host().vertices();
    let in_range = cert.u < p && cert.u1.is_subset(all) && cert.u2.is_subset(all);
    rep.push("vertices-in-range", in_range, "");
    if !in_range {
        return rep;
    }
    let (u, a, b) = (cert.u, cert.u1, cert.u2);
    let parted = !a.contains(u) && !b.contains(u) && a.is_disjoint(b) && (a | b).with(u) == all;
    rep.push("partition", parted, "");
    let recomputed = thin_checks(n, beta, a.len(), b.len());
    for c in &recomputed {
        rep.push(c.id.clone(), c.holds, c.to_string());
    }
    rep.push("checks-consistent", cert.checks == recomputed, "");

    let pairs_in = |s: VertexSet| -> Vec<(usize, usize)> {
        let v = s.to_vec();
        let mut out = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            for &y in &v[i + 1..] {
                out.push((x, y));
            }
        }
        out
    };
    let rc = cert.orientation;
    let first_off =
        |pairs: Vec<(usize, usize)>, want: Color| pairs.into_iter().find(|&(x, y)| col.color_of(x, y) != Some(want));
    for (name, s) in [("u1-clique", a), ("u2-clique", b)] {
        let bad = if parted { first_off(pairs_in(s), rc) } else { None };
        rep.push(
            name,
            parted && bad.is_none(),
            bad.map(|e| format!("pair {e:?} is not {}", rc.letter()))
                .unwrap_or_default(),
        );
    }
    let cross: Vec<(usize, usize)> = a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).collect();
    let bad = if parted { first_off(cross, rc.other()) } else { None };
    rep.push(
        "cross-complete",
        parted && bad.is_none(),
        bad.map(|e| format!("pair {e:?} is not {}", rc.other().letter()))
            .unwrap_or_default(),
    );
    for (name, color) in [("no-mono-cycle-red", Color::Red), ("no-mono-cycle-blue", Color::Blue)] {
        let found = if (3..=p).contains(&n) {
            cycle_of_length(col.class(color), n).expect("length in range")
        } else {
            None
        };
        rep.push(
            name,
            found.is_none(),
            found.map(|c| format!("C_{n} {c:?}")).unwrap_or_default(),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::rational::q;

    /// Red `K3 ∪ K4` on `U1 = {0,1,2}`, `U2 = {3,..,6}`, vertex 7 red to
    /// `U1`; every other pair blue.
    fn golden() -> TwoColoring {
        let mut red = Graph::empty(8).unwrap();
        named::add_clique(&mut red, 0..3);
        named::add_clique(&mut red, 3..7);
        for x in 0..3 {
            red.add_edge(7, x).unwrap();
        }
        TwoColoring::complete_from_red_graph(red).unwrap()
    }

    #[test]
    fn host_orders() {
        assert_eq!(host_order(5, &q(2, 5)), 8);
        assert_eq!(host_order(4, &q(1, 2)), 6);
        assert_eq!(host_order(7, &q(3, 7)), 11);
    }

    #[test]
    fn golden_instance_certificate() {
        let col = golden();
        let cert = cycth1_certificate(&col, 5, &q(2, 5)).unwrap();
        assert_eq!((cert.u1.len(), cert.u2.len()), (3, 4));
        assert_eq!(cert.orientation, Color::Red);
        assert!(cert.checks.iter().all(|c| c.holds));
        assert_eq!(cert.checks[0].rhs, Expr::count(2));
        let rep = verify_ramsey_certificate(&col, &cert, 5, &q(2, 5));
        assert!(rep.passed, "{:?}", rep.failures());
        assert!(certificate_exists(&col, 5, &q(2, 5)));

        let swapped = cycth1_certificate(&col.swapped(), 5, &q(2, 5)).unwrap();
        assert_eq!((swapped.u, swapped.u1, swapped.u2), (cert.u, cert.u1, cert.u2));
        assert_eq!(swapped.orientation, Color::Blue);
    }

    #[test]
    fn corrupted_certificates_fail_named_checks() {
        let col = golden();
        let beta = q(2, 5);
        let cert = cycth1_certificate(&col, 5, &beta).unwrap();
        let mut moved = cert.clone();
        let v = moved.u1.min().unwrap();
        moved.u1.remove(v);
        moved.u2.insert(v);
        let rep = verify_ramsey_certificate(&col, &moved, 5, &beta);
        assert!(!rep.get("u2-clique").unwrap().passed || !rep.get("cross-complete").unwrap().passed);

        // recolouring a cross pair red does not touch U1 × U2 here, so pick
        // an edge that closes a blue C5 instead
        let mut recoloured = col.clone();
        let found = (0..8)
            .flat_map(|x| (x + 1..8).map(move |y| (x, y)))
            .find(|&(x, y)| {
                let mut c = col.clone();
                c.recolor(x, y, Color::Blue).is_ok() && cycle_of_length(c.blue(), 5).unwrap().is_some()
            })
            .unwrap();
        recoloured.recolor(found.0, found.1, Color::Blue).unwrap();
        let rep = verify_ramsey_certificate(&recoloured, &cert, 5, &beta);
        assert!(!rep.get("no-mono-cycle-blue").unwrap().passed);
    }

    #[test]
    fn hypothesis_failures() {
        let all_red = TwoColoring::complete_from_red_graph(named::complete(8)).unwrap();
        let err = cycth1_certificate(&all_red, 5, &q(2, 5)).unwrap_err();
        let Cycth1Error::HypothesisUnsatisfiable(m) = err else {
            panic!("{err:?}");
        };
        assert_eq!((m.color, m.cycle.len()), (Color::Red, 5));
        let col = TwoColoring::complete_from_red_graph(named::cycle(6)).unwrap();
        assert!(matches!(
            cycth1_certificate(&col, 4, &q(1, 2)),
            Err(Cycth1Error::HypothesisUnsatisfiable(_))
        ));
        assert!(matches!(
            cycth1_certificate(&col, 4, &q(0, 1)),
            Err(Cycth1Error::BadParameters(_))
        ));
        assert!(matches!(
            cycth1_certificate(&col, 3, &q(1, 3)),
            Err(Cycth1Error::BadParameters(_))
        ));
        assert!(matches!(
            cycth1_certificate(&col, 5, &q(2, 5)),
            Err(Cycth1Error::BadParameters(_))
        ));
    }
}
