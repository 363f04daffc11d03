//! Classical bounds relating edge count, order and cycle lengths, each
//! evaluated exactly on a concrete graph.

use serde::{Deserialize, Serialize};

use crate::cycles::{cycle_spectrum, longest_cycle, SpectrumReport};
use crate::graph::Graph;
use crate::rational::{Check, Expr, Rational, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub n: usize,
    pub e: usize,
    pub c: usize,
    pub verdict: Verdict,
    /// Why the bound does not apply, or how a vacuous case was decided.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    pub checks: Vec<Check>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn applicable(&self) -> bool {
        self.verdict != Verdict::NotApplicable
    }

    fn from_checks(name: &str, n: usize, e: usize, c: usize, checks: Vec<Check>, note: String) -> Self {
        let verdict = if checks.iter().all(|ch| ch.holds) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        BoundReport {
            name: name.into(),
            n,
            e,
            c,
            verdict,
            note,
            checks,
        }
    }

    fn not_applicable(name: &str, n: usize, e: usize, c: usize, note: String) -> Self {
        BoundReport {
            name: name.into(),
            n,
            e,
            c,
            verdict: Verdict::NotApplicable,
            note,
            checks: Vec::new(),
        }
    }
}

fn r(v: usize) -> Rational {
    Rational::from(v)
}

/// `e ≥ n` implies `c > 2e/n`, checked as `c·n > 2e`.
pub fn check_erdos_gallai(g: &Graph) -> BoundReport {
    check_erdos_gallai_with(g, longest_cycle(g).length)
}

pub fn check_erdos_gallai_with(g: &Graph, c: usize) -> BoundReport {
    let (n, e) = (g.n(), g.edge_count());
    const NAME: &str = "erdos-gallai";
    if e < n || n == 0 {
        return BoundReport::not_applicable(NAME, n, e, c, format!("e = {e} < n = {n}"));
    }
    let check = Check::new("circumference", Expr::count(c * n), Relation::Gt, Expr::count(2 * e));
    BoundReport::from_checks(NAME, n, e, c, vec![check], String::new())
}

/// For 2-connected graphs:
/// (a) `e ≤ C(c+1-⌊c/2⌋, 2) + ⌊c/2⌋(n-c-1+⌊c/2⌋)`;
/// (b) Hamiltonian, or `c > 2n(1 - √(1 - 2e/n²))`.
///
/// (a) is only evaluated when `c < n`: on Hamiltonian graphs it can fail
/// (`K_4` has 6 edges against a bound of 5), and (b) needs it only in the
/// non-Hamiltonian case.
///
/// (b) is recorded twice: once as the comparison against the square-root
/// expression, and once in the squared form `(2n-c)² < 4n² - 8e`, which is
/// equivalent because `2n - c > 0`.
pub fn check_fan_lv_weng(g: &Graph) -> BoundReport {
    check_fan_lv_weng_with(g, longest_cycle(g).length)
}

pub fn check_fan_lv_weng_with(g: &Graph, c: usize) -> BoundReport {
    let (n, e) = (g.n(), g.edge_count());
    const NAME: &str = "fan-lv-weng";
    if !g.is_two_connected() {
        return BoundReport::not_applicable(NAME, n, e, c, "graph is not 2-connected".into());
    }
    let mut checks = Vec::new();
    let note = if c == n {
        checks.push(Check::new("hamiltonian", Expr::count(c), Relation::Eq, Expr::count(n)));
        "Hamiltonian: the circumference bound holds vacuously and the edge bound is not evaluated".to_string()
    } else {
        checks.push(Check::new("edge-bound", Expr::count(e), Relation::Le, edge_bound(n, c)));
        let two_n = r(2 * n);
        let radicand = Rational::one() - r(2 * e) / (r(n) * r(n));
        let bound =
            Expr::with_sqrt(two_n.clone(), -two_n.clone(), radicand).expect("2e ≤ n(n-1) keeps the radicand positive");
        checks.push(Check::new("circumference", Expr::count(c), Relation::Gt, bound));
        let lhs = (two_n.clone() - r(c)).square();
        let rhs = r(4 * n * n) - r(8 * e);
        checks.push(Check::new("circumference-squared", lhs, Relation::Lt, rhs));
        String::new()
    };
    BoundReport::from_checks(NAME, n, e, c, checks, note)
}

/// `C(c+1-⌊c/2⌋, 2) + ⌊c/2⌋(n-c-1+⌊c/2⌋)`.
pub fn edge_bound(n: usize, c: usize) -> Rational {
    let h = c / 2;
    let a = c + 1 - h;
    Rational::from(a * (a - 1) / 2) + r(h) * (r(n) - r(c) - r(1) + r(h))
}

/// `4e > n²` implies a cycle of every length in `[3, c]`.
pub fn check_bollobas_pancyclicity(g: &Graph) -> BoundReport {
    check_bollobas_with(g, &cycle_spectrum(g))
}

pub fn check_bollobas_with(g: &Graph, spectrum: &SpectrumReport) -> BoundReport {
    let (n, e, c) = (g.n(), g.edge_count(), spectrum.c);
    const NAME: &str = "bollobas";
    let density = Check::new("density", Expr::count(4 * e), Relation::Gt, Expr::count(n * n));
    if !density.holds {
        return BoundReport::not_applicable(NAME, n, e, c, format!("4e = {} ≤ n² = {}", 4 * e, n * n));
    }
    let gaps = spectrum.gaps();
    let covered = (3..=c).count() - gaps.len();
    let coverage = Check::new(
        "lengths-covered",
        Expr::count(covered),
        Relation::Eq,
        Expr::count(c.saturating_sub(2)),
    );
    let note = if gaps.is_empty() {
        String::new()
    } else {
        format!("missing lengths {gaps:?}")
    };
    BoundReport::from_checks(NAME, n, e, c, vec![density, coverage], note)
}

/// All three bounds, sharing one spectrum computation.
pub fn all_bounds(g: &Graph) -> Vec<BoundReport> {
    let spectrum = cycle_spectrum(g);
    vec![
        check_erdos_gallai_with(g, spectrum.c),
        check_fan_lv_weng_with(g, spectrum.c),
        check_bollobas_with(g, &spectrum),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn erdos_gallai_examples() {
        assert!(check_erdos_gallai(&named::complete(4)).passed());
        assert!(check_erdos_gallai(&named::cycle(5)).passed());
        let p = check_erdos_gallai(&named::petersen());
        assert!(p.passed());
        assert_eq!(p.checks[0].lhs, Expr::count(90));
        assert!(!check_erdos_gallai(&named::path(5)).applicable());
    }

    #[test]
    fn fan_lv_weng_examples() {
        let c5 = check_fan_lv_weng(&named::cycle(5));
        assert!(c5.passed());
        assert_eq!(c5.checks[0].id, "hamiltonian");
        assert_eq!(edge_bound(5, 5), Rational::from(8usize));
        assert_eq!(edge_bound(4, 4), Rational::from(5usize));
        // K_11 with two extra vertices both joined to the same pair: c = 12,
        // e = 59, above the bound 57 evaluated at n = 13.
        let mut g = named::complete(13);
        for v in 11..13 {
            for w in 2..13 {
                if v != w {
                    g.remove_edge(v, w).unwrap();
                }
            }
        }
        let r = check_fan_lv_weng_with(&g, 12);
        assert_eq!(r.checks[0].rhs, Expr::count(57));
        assert!(!r.checks[0].holds);
        let p = check_fan_lv_weng(&named::petersen());
        assert!(p.passed(), "{p:?}");
        // C(6,2) + 4·(10-9-1+4) = 31
        assert_eq!(p.checks[0].rhs, Expr::count(31));
        // (2·10 - 9)² = 121 < 400 - 120 = 280
        assert_eq!(p.checks[2].lhs, Expr::count(121));
        assert_eq!(p.checks[2].rhs, Expr::count(280));
        assert!(check_fan_lv_weng(&named::complete(4)).passed());
        assert!(!check_fan_lv_weng(&named::path(4)).applicable());
    }

    #[test]
    fn bollobas_examples() {
        assert!(check_bollobas_pancyclicity(&named::complete(5)).passed());
        assert!(!check_bollobas_pancyclicity(&named::complete_bipartite(3, 3)).applicable());
        let g = named::complete_minus_matching(6, 3);
        let b = check_bollobas_pancyclicity(&g);
        assert!(b.passed());
        assert_eq!(b.c, 6);
    }
}
