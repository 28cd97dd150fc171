use std::sync::Arc;

use gbs_core::core_extraction::{classify_component, collapse_once, extract_core};
use gbs_core::development::is_in_centralizer;
use gbs_core::fixtures::{bs24, figure_graph, reduction_spec};
use gbs_core::graph::{GbsGraph, VertexId};
use gbs_core::report::analyze;
use gbs_core::spec::{parse_spec, serialize_spec, GraphOfGroupsSpec};
use gbs_core::twists::{centralizer_elements, twist_from_centralizers, CentralizerAssignment};
use gbs_core::word::Word;
use gbs_core::BallLimits;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Raw material for a word: a start vertex choice and `(exponent, edge
/// choice)` steps, turned into a sound word by walking out-edges.
type Steps = (usize, Vec<(i64, usize)>, i64);

fn steps(max_len: usize) -> impl Strategy<Value = Steps> {
    (0usize..8, prop::collection::vec((-9i64..=9, 0usize..8), 0..max_len), -9i64..=9)
}

fn build(g: &GbsGraph, (v, steps, last): &Steps) -> Word {
    let start = VertexId((*v % g.serre().vertex_count()) as u32);
    let mut at = start;
    let mut exps = Vec::new();
    let mut edges = Vec::new();
    for (k, choice) in steps {
        let out: Vec<_> = g.serre().out_edges(at).collect();
        if out.is_empty() {
            break;
        }
        let e = out[choice % out.len()];
        exps.push(BigInt::from(*k));
        edges.push(e);
        at = g.terminal(e);
    }
    exps.push(BigInt::from(*last));
    Word::from_parts(start, exps, edges)
}

/// Closes a word at its start by appending the reverse of its edge path.
fn close(g: &GbsGraph, w: &Word) -> Word {
    let back: Vec<_> = w.edges().iter().rev().map(|e| e.reverse()).collect();
    let tail = g.path_word(g.terminal_of(w), &back);
    g.concat(w, &tail).unwrap()
}

fn graphs() -> Vec<GbsGraph> {
    vec![bs24(), figure_graph()]
}

/// Random connected GBS graph: a path on `labels.len() + 1` vertices plus
/// extra edges between arbitrary vertices.
fn random_gbs() -> impl Strategy<Value = GbsGraph> {
    let label = prop_oneof![-4i64..=-1, 1i64..=4];
    (
        prop::collection::vec((label.clone(), label.clone()), 0..4),
        prop::collection::vec((0usize..5, 0usize..5, label.clone(), label), 0..3),
    )
        .prop_map(|(path, extra)| {
            let mut g = GbsGraph::new();
            let n = path.len() + 1;
            for i in 0..n {
                g.add_vertex(&format!("v{i}")).unwrap();
            }
            for (i, (a, b)) in path.into_iter().enumerate() {
                g.add_edge(&format!("p{i}"), VertexId(i as u32), VertexId(i as u32 + 1), a, b)
                    .unwrap();
            }
            for (i, (x, y, a, b)) in extra.into_iter().enumerate() {
                g.add_edge(&format!("q{i}"), VertexId((x % n) as u32), VertexId((y % n) as u32), a, b)
                    .unwrap();
            }
            g
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent(s in steps(8), which in 0usize..2) {
        let g = &graphs()[which];
        let w = build(g, &s);
        let c = g.canonical_form(&w).unwrap();
        prop_assert_eq!(g.canonical_form(&c).unwrap(), c.clone());
        let r = g.britton_reduce(&w).unwrap();
        prop_assert_eq!(g.britton_reduce(&r).unwrap(), r.clone());
        let status = g.normal_form_status(&c).unwrap();
        prop_assert!(status.reduced && status.canonical);
        prop_assert!(c.len() == r.len() && r.len() <= w.len());
    }

    #[test]
    fn group_laws(a in steps(5), b in steps(5), c in steps(5), which in 0usize..2) {
        let g = &graphs()[which];
        let x = close(g, &build(g, &a));
        let v = x.start();
        let rebase = |s: &Steps| close(g, &build(g, &(v.0 as usize, s.1.clone(), s.2)));
        let (y, z) = (rebase(&b), rebase(&c));
        let xy_z = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let one = Word::identity(v);
        prop_assert!(g.multiply(&x, &g.invert(&x).unwrap()).unwrap().is_trivial());
        prop_assert_eq!(g.multiply(&one, &x).unwrap(), g.canonical_form(&x).unwrap());
        prop_assert_eq!(g.invert(&g.invert(&x).unwrap()).unwrap(), g.canonical_form(&x).unwrap());
    }

    #[test]
    fn relator_insertion_preserves_canonical_form(
        s in steps(6), pos in 0usize..8, k in -3i64..=3, choice in 0usize..8, which in 0usize..2,
    ) {
        // Insert the relator e z^(k label(e)) e' z^(-k label(e')) at a vertex
        // the word passes through.
        let g = &graphs()[which];
        let w = build(g, &s);
        let i = pos % (w.len() + 1);
        let at = if i == 0 { w.start() } else { g.terminal(w.edges()[i - 1]) };
        let out: Vec<_> = g.serre().out_edges(at).collect();
        let e = out[choice % out.len()];
        let relator = Word::from_parts(
            at,
            vec![BigInt::from(0), BigInt::from(k) * g.label(e), BigInt::from(-k) * g.label(e.reverse())],
            vec![e, e.reverse()],
        );
        let prefix = Word::from_parts(w.start(), w.exps()[..=i].to_vec(), w.edges()[..i].to_vec());
        let mut rest_exps = vec![BigInt::from(0)];
        rest_exps.extend_from_slice(&w.exps()[i + 1..]);
        let suffix = Word::from_parts(at, rest_exps, w.edges()[i..].to_vec());
        let longer = g.concat(&g.concat(&prefix, &relator).unwrap(), &suffix).unwrap();
        prop_assert!(g.equals(&longer, &w).unwrap());
    }

    #[test]
    fn classification_is_conjugation_invariant(s in steps(6), h in steps(4), which in 0usize..2) {
        let g = &graphs()[which];
        let w = close(g, &build(g, &s));
        let v = w.start();
        let conj = build(g, &(v.0 as usize, h.1.clone(), h.2));
        let x = g.terminal_of(&conj);
        let inv = g.invert(&conj).unwrap();
        // conj^-1 w conj is closed at x.
        let moved = g.product([&inv, &w, &conj]).unwrap();
        prop_assert_eq!(moved.start(), x);
        prop_assert_eq!(g.classify_element(&moved).unwrap(), g.classify_element(&w).unwrap());
    }

    #[test]
    fn cyclic_reduction(s in steps(8), which in 0usize..2) {
        let g = &graphs()[which];
        let w = close(g, &build(g, &s));
        let (core, conj) = g.cyclic_reduce(&w).unwrap();
        let back = g.product([&conj, &core, &g.invert(&conj).unwrap()]).unwrap();
        prop_assert!(g.equals(&back, &w).unwrap());
        let again = g.cyclic_reduce(&core).unwrap().0;
        prop_assert_eq!(again.len(), core.len());
        prop_assert!(core.len() <= g.britton_reduce(&w).unwrap().len());
    }

    #[test]
    fn centralizer_membership_matches_commutation(s in steps(6), n in 1i64..=30) {
        let g = figure_graph();
        let w = close(&g, &build(&g, &s));
        let v = w.start();
        prop_assert_eq!(
            is_in_centralizer(&g, &w, v, n).unwrap(),
            g.commutes(&w, &Word::power(v, n)).unwrap()
        );
    }

    #[test]
    fn spec_round_trip(g in random_gbs()) {
        let spec = GraphOfGroupsSpec::from_gbs(&g);
        let back = parse_spec(&serialize_spec(&spec)).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn collapse_steps_are_isomorphisms(g in random_gbs()) {
        let mut cur = g;
        let class = classify_component(&cur);
        while let Some((next, step)) = collapse_once(&cur) {
            // In the graph before the step, the eliminated generator equals
            // e' x^(label(e') label(e)) e for the collapsed edge e : x -> y.
            let e = cur.edge(&step.edge).unwrap();
            let x = cur.vertex(&step.kept).unwrap();
            let y = cur.vertex(&step.eliminated).unwrap();
            prop_assert_eq!(cur.initial(e), x);
            let via = cur
                .product([&cur.edge_word(e.reverse()), &Word::power(x, step.power.clone()), &cur.edge_word(e)])
                .unwrap();
            prop_assert!(cur.equals(&via, &Word::power(y, 1)).unwrap());
            prop_assert_eq!(next.serre().vertex_count() + 1, cur.serre().vertex_count());
            prop_assert_eq!(next.serre().edge_count() + 2, cur.serre().edge_count());
            prop_assert_eq!(classify_component(&next), class);
            cur = next;
        }
    }

    #[test]
    fn report_counts_invariant_under_renaming(perm in any::<u32>()) {
        let spec = reduction_spec();
        let limits = BallLimits::new(16, 1_000_000u64);
        let base = analyze(&spec, &limits).unwrap();
        let mut text = serialize_spec(&spec);
        for id in ["r1", "r2", "r3", "r4", "r5", "f1", "f2", "f3", "f4", "f5"] {
            text = text.replace(&format!("\"{id}\""), &format!("\"x{perm}_{id}\""));
        }
        let renamed = analyze(&parse_spec(&text).unwrap(), &limits).unwrap();
        prop_assert_eq!((renamed.s, renamed.t, renamed.ignored), (base.s, base.t, base.ignored));
        let cases = |r: &gbs_core::AnalysisReport| r.per_root.iter().map(|p| p.case).collect::<Vec<_>>();
        prop_assert_eq!(cases(&renamed), cases(&base));
    }
}

fn pools(g: &GbsGraph) -> Vec<Vec<Word>> {
    let limits = BallLimits::new(16, 1_000_000_000u64);
    g.serre()
        .vertices()
        .map(|v| centralizer_elements(g, v, 1, &limits, 3, 200))
        .collect()
}

fn pick(pools: &[Vec<Word>], seeds: &[usize]) -> CentralizerAssignment {
    CentralizerAssignment(
        pools
            .iter()
            .zip(seeds.iter().cycle())
            .map(|(p, s)| p[s % p.len()].clone())
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_homomorphism_and_inverse(
        s1 in prop::collection::vec(any::<usize>(), 3),
        s2 in prop::collection::vec(any::<usize>(), 3),
        which in 0usize..2,
    ) {
        let g = Arc::new(graphs().swap_remove(which));
        let p = pools(&g);
        let (c1, c2) = (pick(&p, &s1), pick(&p, &s2));
        let (t1, t1_inv) = twist_from_centralizers(&g, &c1).unwrap();
        let (t2, _) = twist_from_centralizers(&g, &c2).unwrap();
        let (t21, _) = twist_from_centralizers(&g, &c2.product(&g, &c1).unwrap()).unwrap();
        prop_assert_eq!(t2.compose(&t1).unwrap(), t21);
        prop_assert!(t1.compose(&t1_inv).unwrap().is_identity());
        prop_assert!(t1_inv.compose(&t1).unwrap().is_identity());
    }

    #[test]
    fn twist_acts_on_closed_words_by_conjugation(
        seeds in prop::collection::vec(any::<usize>(), 3),
        s in steps(5),
        which in 0usize..2,
    ) {
        let g = Arc::new(graphs().swap_remove(which));
        let c = pick(&pools(&g), &seeds);
        let (theta, _) = twist_from_centralizers(&g, &c).unwrap();
        let w = close(&g, &build(&g, &s));
        let v = w.start();
        let cv = &c.0[v.0 as usize];
        let expected = g.product([cv, &w, &g.invert(cv).unwrap()]).unwrap();
        prop_assert_eq!(theta.apply(&w).unwrap(), expected);
        if g.commutes(cv, &w).unwrap() && is_in_centralizer(&g, &w, v, 1).unwrap() {
            prop_assert!(theta.fixes_centralizer_check(v, 1, &[w]).unwrap());
        }
    }

    #[test]
    fn twists_preserve_core_components(seeds in prop::collection::vec(any::<usize>(), 5), s in steps(6), start in 0usize..5) {
        let core = extract_core(&reduction_spec());
        let g = Arc::new(core.core.clone());
        let c = pick(&pools(&g), &seeds);
        let (theta, _) = twist_from_centralizers(&g, &c).unwrap();
        let w = build(&g, &(start, s.1, s.2));
        let comp = |x: VertexId| core.component_of(g.vertex_name(x)).unwrap();
        let home = comp(w.start());
        let image = theta.apply(&w).unwrap();
        prop_assert!(image.edges().iter().all(|&e| comp(g.initial(e)) == home && comp(g.terminal(e)) == home));
        prop_assert_eq!(comp(image.start()), home);
    }
}
