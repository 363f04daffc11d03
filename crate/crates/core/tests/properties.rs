use std::collections::BTreeSet;

use proptest::prelude::*;

use cyclestab_core::bounds::{check_bollobas_with, check_erdos_gallai_with, check_fan_lv_weng_with, Verdict};
use cyclestab_core::coloring::{parse_coloring, to_coloring_text};
use cyclestab_core::cycles::{cycle_of_length, cycle_spectrum, longest_cycle, validate_cycle};
use cyclestab_core::format::{parse_graph, to_edge_list, to_graph6};
use cyclestab_core::paths::{
    bipartite_xy_path, hamiltonian_path_between, near_spanning_paths, validate_path, PathError,
};
use cyclestab_core::ramsey::{
    arrth_verdict, certificate_exists, cycth1_certificate, le4_extract, mono_even_cycle, ramsey_sweep, validate_le4,
    verify_ramsey_certificate, SweepMode, SweepOptions,
};
use cyclestab_core::stability::{
    decompose_cycth, decompose_th3par, decompose_thdc, verify_stability_certificate, DecompositionParams, Outcome,
};
use cyclestab_core::{Color, Graph, Rational, TwoColoring, VertexSet};
use cyclestab_oracle::{brute_force_path, is_cycle, is_path, naive_cycle_lengths};

fn graph_on(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Graphs on `lo..=hi` vertices with a random edge density.
fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.1f64..0.9).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| graph_on(n, &bits))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

fn complete_coloring(p: usize, bits: &[bool]) -> TwoColoring {
    TwoColoring::complete_from_red_graph(graph_on(p, bits)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(g in graphs(1, 16)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn edges_split_across_a_cut(g in graphs(1, 16), bits in any::<u64>()) {
        let s = VertexSet::from_bits(bits) & g.vertices();
        let rest = g.vertices() - s;
        let inside = g.induced(s).unwrap().edge_count();
        let outside = g.induced(rest).unwrap().edge_count();
        prop_assert_eq!(inside + outside + g.edges_between(s, rest).len(), g.edge_count());
    }

    #[test]
    fn components_partition_the_vertices(g in graphs(1, 16)) {
        let comps = g.components();
        let mut union = VertexSet::EMPTY;
        for (i, c) in comps.iter().enumerate() {
            prop_assert!(union.is_disjoint(*c));
            union |= *c;
            prop_assert!(g.is_connected_within(*c));
            for d in &comps[i + 1..] {
                prop_assert!(g.edges_between(*c, *d).is_empty());
            }
        }
        prop_assert_eq!(union, g.vertices());
    }

    #[test]
    fn cut_vertices_raise_the_component_count(g in graphs(1, 14)) {
        let before = g.components().len();
        let cuts = g.cut_vertices();
        for v in 0..g.n() {
            let after = g.remove_vertices(VertexSet::singleton(v)).unwrap().components().len();
            prop_assert_eq!(cuts.contains(v), after > before, "vertex {}", v);
        }
    }

    #[test]
    fn bipartite_iff_no_odd_cycle(g in graphs(1, 10)) {
        let odd = (3..=g.n()).step_by(2).any(|t| cycle_of_length(&g, t).unwrap().is_some());
        prop_assert_eq!(g.bipartition().is_some(), !odd);
    }

    #[test]
    fn formats_round_trip(g in graphs(1, 20)) {
        prop_assert_eq!(parse_graph(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn rationals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = Rational::new(num, den);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn spectrum_matches_naive_enumeration(g in graphs(1, 8)) {
        let naive: Vec<usize> = naive_cycle_lengths(&g).into_iter().collect();
        let s = cycle_spectrum(&g);
        prop_assert_eq!(&s.lengths, &naive);
        prop_assert_eq!(longest_cycle(&g).length, naive.last().copied().unwrap_or(0));
        for w in &s.witnesses {
            prop_assert!(is_cycle(&g, &w.cycle) && w.cycle.len() == w.length);
            prop_assert!(validate_cycle(&g, &w.cycle).is_ok());
        }
    }

    #[test]
    fn present_lengths_never_exceed_the_circumference(g in graphs(3, 12)) {
        let c = longest_cycle(&g).length;
        for t in 3..=g.n() {
            if let Some(cycle) = cycle_of_length(&g, t).unwrap() {
                prop_assert!(t <= c);
                prop_assert!(is_cycle(&g, &cycle) && cycle.len() == t);
            }
        }
    }

    #[test]
    fn classical_bounds_hold(g in graphs(3, 10)) {
        let s = cycle_spectrum(&g);
        let (n, e) = (g.n(), g.edge_count());
        if g.is_connected() && e >= n {
            prop_assert_eq!(check_erdos_gallai_with(&g, s.c).verdict, Verdict::Pass);
        }
        let flw = check_fan_lv_weng_with(&g, s.c);
        if g.is_two_connected() && s.c < n {
            let a = flw.checks.iter().find(|c| c.id == "edge-bound").unwrap();
            prop_assert!(a.holds, "{:?}", flw);
        }
        if 4 * e > n * n {
            prop_assert_eq!(check_bollobas_with(&g, &s).verdict, Verdict::Pass);
        }
    }

    #[test]
    fn spanning_paths_are_exact(g in graphs(2, 8), x in 0usize..8, y in 0usize..8) {
        let (x, y) = (x % g.n(), y % g.n());
        prop_assume!(x != y);
        let oracle = brute_force_path(&g, x, y, g.n() - 1);
        match hamiltonian_path_between(&g, x, y) {
            Ok(h) => {
                prop_assert!(validate_path(&g, &h.path).is_ok());
                prop_assert!(is_path(&g, &h.path.vertices) && h.path.order == g.n());
                prop_assert_eq!(h.path.endpoints, (x, y));
            }
            Err(PathError::NoSuchPath { hypothesis_holds }) => {
                prop_assert!(oracle.is_none());
                prop_assert!(!hypothesis_holds);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn near_spanning_path_avoids_the_removed_vertex(g in graphs(6, 12).prop_filter("dense", |g| 2 * g.min_degree() >= g.n() + 2), x in 0usize..12, y in 0usize..12) {
        let (x, y) = (x % g.n(), y % g.n());
        prop_assume!(x != y);
        let ns = near_spanning_paths(&g, x, y).unwrap();
        prop_assert!(!ns.near_spanning.vertices.contains(&ns.removed));
        prop_assert!(is_path(&g, &ns.near_spanning.vertices) && ns.near_spanning.order == g.n() - 1);
        prop_assert!(is_path(&g, &ns.spanning.vertices) && ns.spanning.order == g.n());
    }
}

/// Random bipartite graphs with `δ ≥ |B|/2 + 1`, classes `0..a` and `a..a+b`.
fn dense_bipartite() -> impl Strategy<Value = Graph> {
    (3usize..=6, 0usize..=2)
        .prop_flat_map(|(a, extra)| {
            let b = a + extra;
            (
                Just(a),
                Just(b),
                proptest::collection::vec(proptest::bool::weighted(0.85), a * b),
            )
        })
        .prop_map(|(a, b, bits)| {
            let mut g = Graph::empty(a + b).unwrap();
            for u in 0..a {
                for v in 0..b {
                    if bits[u * b + v] {
                        g.add_edge(u, a + v).unwrap();
                    }
                }
            }
            g
        })
        .prop_filter("degree condition", |g| {
            g.bipartition()
                .is_some_and(|p| 2 * g.min_degree() >= p.larger.len() + 2)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn splices_add_two_each(g in dense_bipartite(), x in 0usize..14, y in 0usize..14, pick in any::<usize>()) {
        let (x, y) = (x % g.n(), y % g.n());
        prop_assume!(x != y);
        let parts = g.bipartition().unwrap();
        let same = parts.smaller.contains(x) == parts.smaller.contains(y);
        let top = 2 * (2 * g.min_degree() as i64 - parts.smaller.len() as i64 - 1);
        let lo = if same { 2 } else { 3 };
        let admissible: Vec<usize> = (lo..=top.max(0) as usize).filter(|t| (t % 2 == 0) == same).collect();
        prop_assume!(!admissible.is_empty());
        let t = admissible[pick % admissible.len()];
        let bp = bipartite_xy_path(&g, x, y, t).unwrap();
        prop_assert!(is_path(&g, &bp.path.vertices) && bp.path.length == t);
        let base = bp.trace[0];
        prop_assert_eq!(bp.trace.len(), (t - base) / 2 + 1);
        prop_assert!(bp.trace.windows(2).all(|w| w[1] == w[0] + 2));
        prop_assert_eq!(*bp.trace.last().unwrap(), t);
    }
}

/// Two dense blocks with a few edges between them, the shape the
/// decompositions are built for.
fn two_blocks() -> impl Strategy<Value = Graph> {
    (6usize..=13, 6usize..=13, 0.75f64..1.0, 0usize..4, any::<u64>()).prop_map(|(a, b, p, cross, seed)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = a + b;
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if (u < a) == (v < a) && rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        for _ in 0..cross {
            let _ = g.add_edge(rng.gen_range(0..a), rng.gen_range(a..n));
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decompositions_verify_and_repeat(g in prop_oneof![two_blocks(), graphs(4, 26)]) {
        let ab = DecompositionParams::alpha_beta(Rational::new(1, 50), Rational::new(1, 20));
        let gamma = Rational::new(1, 20);
        let runs = [
            (decompose_thdc(&g, &ab).unwrap(), ab.clone()),
            (decompose_th3par(&g, &ab).unwrap(), ab.clone()),
            (decompose_cycth(&g, &gamma).unwrap(), DecompositionParams::gamma(gamma.clone())),
        ];
        for (rep, params) in &runs {
            match &rep.outcome {
                Outcome::Certificate(cert) => {
                    let v = verify_stability_certificate(&g, cert, params);
                    prop_assert!(v.passed, "{:?}: {:?}", rep.procedure, v.failures());
                }
                Outcome::GluedCycle { cycle, .. } => prop_assert!(is_cycle(&g, cycle)),
                Outcome::Stuck(_) => {}
            }
        }
        prop_assert_eq!(&decompose_thdc(&g, &ab).unwrap(), &runs[0].0);
        prop_assert_eq!(&decompose_th3par(&g, &ab).unwrap(), &runs[1].0);
        prop_assert_eq!(&decompose_cycth(&g, &gamma).unwrap(), &runs[2].0);
    }
}

/// The extremal colouring of `K_8`: red `K_4` on `{0,1,2,7}` and red `K_4`
/// on `{3,4,5,6}`, everything else blue.
fn extremal_k8() -> TwoColoring {
    let mut red = Vec::new();
    for block in [[0, 1, 2, 7], [3, 4, 5, 6]] {
        for i in 0..4 {
            for j in i + 1..4 {
                red.push((block[i], block[j]));
            }
        }
    }
    TwoColoring::complete_from_red(8, &red).unwrap()
}

fn relabel_coloring(col: &TwoColoring, perm: &[usize]) -> TwoColoring {
    TwoColoring::complete_from_red_graph(relabel(col.red(), perm)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ramsey_certificates_are_swap_symmetric(perm in permutation(8), swap in any::<bool>()) {
        let beta = Rational::new(2, 5);
        let mut col = relabel_coloring(&extremal_k8(), &perm);
        if swap {
            col = col.swapped();
        }
        let cert = cycth1_certificate(&col, 5, &beta).unwrap();
        prop_assert!(verify_ramsey_certificate(&col, &cert, 5, &beta).passed);
        prop_assert!(certificate_exists(&col, 5, &beta));
        let other = cycth1_certificate(&col.swapped(), 5, &beta).unwrap();
        prop_assert_eq!((other.u, other.u1, other.u2), (cert.u, cert.u1, cert.u2));
        prop_assert_eq!(other.orientation, cert.orientation.other());
        let text = to_coloring_text(&col);
        prop_assert_eq!(parse_coloring(&text).unwrap(), col);
    }

    #[test]
    fn arrth_verdict_flips_with_colours(bits in proptest::collection::vec(any::<bool>(), 36)) {
        let col = complete_coloring(9, &bits);
        let a = arrth_verdict(&col).unwrap();
        let b = arrth_verdict(&col.swapped()).unwrap();
        prop_assert_eq!(b.verdict, a.verdict.swapped());
    }

    #[test]
    fn forced_even_cycles_are_found(bits6 in proptest::collection::vec(any::<bool>(), 15), bits8 in proptest::collection::vec(any::<bool>(), 28)) {
        let six = complete_coloring(6, &bits6);
        let m = mono_even_cycle(&six, 2).unwrap();
        prop_assert!(is_cycle(six.class(m.color), &m.cycle) && m.cycle.len() == 4);
        let eight = complete_coloring(8, &bits8);
        let m = mono_even_cycle(&eight, 3).unwrap();
        prop_assert!(is_cycle(eight.class(m.color), &m.cycle) && m.cycle.len() == 6);
    }

    #[test]
    fn le4_output_revalidates(perm in permutation(8), star in 0usize..=3, centre in 0usize..4) {
        // K4,4 minus a star of `star` edges at one vertex, relabelled
        let mut g = Graph::new(8, &(0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect::<Vec<_>>()).unwrap();
        for b in 4..4 + star {
            g.remove_edge(centre, b).unwrap();
        }
        let g = relabel(&g, &perm);
        match le4_extract(&g) {
            Ok(ext) => {
                prop_assert!(validate_le4(&g, &ext).passed);
                // the two parts are independent in g and complete to each other off u
                let (u1, u2): (Vec<usize>, Vec<usize>) = (ext.u1.to_vec(), ext.u2.to_vec());
                for s in [&u1, &u2] {
                    prop_assert!(s.iter().all(|&a| s.iter().all(|&b| !g.has_edge(a, b))));
                }
                prop_assert!(u1.iter().filter(|&&a| a != ext.u).all(|&a| u2.iter().filter(|&&b| b != ext.u).all(|&b| g.has_edge(a, b))));
            }
            // removing three edges at a vertex of K4,4 leaves it of degree 1
            Err(e) => prop_assert!(star == 3, "{}", e),
        }
    }

    #[test]
    fn le4_never_returns_invalid_output(g in graphs(8, 8)) {
        if let Ok(ext) = le4_extract(&g) {
            prop_assert!(validate_le4(&g, &ext).passed);
        }
    }
}

#[test]
fn sampled_sweeps_ignore_shard_counts() {
    let opts = |shards| SweepOptions {
        n: 5,
        beta: Rational::new(2, 5),
        mode: SweepMode::Sampled {
            samples: 3000,
            seed: 17,
        },
        shards,
        allow_large: false,
        checkpoint: None,
    };
    let one = ramsey_sweep(&opts(1)).unwrap().report;
    for shards in [2, 5] {
        assert_eq!(ramsey_sweep(&opts(shards)).unwrap().report, one);
    }
    assert_eq!(one.failures, 0);
    assert_eq!(one.mono_found + one.certificate_found, 3000);
}

#[test]
fn extremal_k8_colour_classes() {
    let col = extremal_k8();
    let red: BTreeSet<usize> = naive_cycle_lengths(col.class(Color::Red)).into_iter().collect();
    let blue: BTreeSet<usize> = naive_cycle_lengths(col.class(Color::Blue)).into_iter().collect();
    assert_eq!(red, BTreeSet::from([3, 4]));
    assert_eq!(blue, BTreeSet::from([4, 6, 8]));
}
