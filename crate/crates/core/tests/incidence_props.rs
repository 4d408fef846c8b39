mod common;

use std::collections::BTreeSet;

use common::{phi, pick, small_group};
use ggraphs::algebra::{Elem, FiniteGroup};
use ggraphs::incidence::{
    incidence_graph, incidence_preimage, lift_automorphism, stabilizes_parts, sufficient_bipartite_test,
    sufficient_recognition_check,
};
use ggraphs::multigraph::{automorphisms, isomorphic, IsoOptions, Multigraph};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = Multigraph> {
    (1usize..=7).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=12).prop_map(move |edges| {
            let mut g = Multigraph::with_vertices(n);
            for (u, v) in edges {
                g.add_edge(u, v, None).unwrap();
            }
            g
        })
    })
}

/// `(G, s, t)` with `o(t) = 2`.
fn with_involution() -> impl Strategy<Value = (FiniteGroup, Elem, Elem)> {
    (small_group(), any::<usize>(), any::<prop::sample::Index>()).prop_filter_map("no involution", |(g, raw, ix)| {
        let s = pick(&g, &[raw])[0];
        let inv: Vec<Elem> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
        (!inv.is_empty()).then(|| {
            let t = inv[ix.index(inv.len())];
            (g, s, t)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn incidence_counts(g in small_graph()) {
        let ig = incidence_graph(&g);
        prop_assert_eq!(ig.graph.vertex_count(), g.vertex_count() + g.edge_count());
        // a source loop contributes a single incidence edge
        let loops = g.edges().iter().filter(|e| e.is_loop()).count();
        prop_assert_eq!(ig.graph.edge_count(), 2 * g.edge_count() - loops);
        prop_assert_eq!(ig.outside_theory, g.has_loops());
        if !g.has_loops() {
            prop_assert!(ig.graph.is_bipartite().is_some());
        }
    }

    #[test]
    fn preimage_round_trip((g, s, t) in with_involution()) {
        let gg = phi(&g, &[s, t]);
        prop_assume!(gg.graph().is_simple());
        let (pre, map) = incidence_preimage(&gg).unwrap();
        let back = incidence_graph(&pre).graph;
        map.verify(gg.graph(), &back).unwrap();
        let f = isomorphic(gg.graph(), &back, &IsoOptions::default()).unwrap();
        prop_assert!(f.is_some());
        // Γ' has one vertex per ⟨s⟩-coset and one edge per ⟨t⟩-coset
        prop_assert_eq!(pre.vertex_count(), g.order() / g.element_order(s));
        prop_assert_eq!(pre.edge_count(), g.order() / 2);
    }

    #[test]
    fn sufficient_witness_passes_recognition((g, raw) in (small_group(), prop::collection::vec(any::<usize>(), 2))) {
        let st = pick(&g, &raw);
        let (s, t) = (st[0], st[1]);
        if let Some(w) = sufficient_bipartite_test(&g, s, t).unwrap() {
            prop_assert!(w.map.homomorphism && w.map.involutive && w.map.fixes_identity);
            prop_assert!(w.map.displacement_holds(&g, s, t));
            let r = sufficient_recognition_check(&g, s, t, &w).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
        }
    }
}

#[test]
fn lifts_are_exactly_the_part_stabilizers() {
    for n in [3, 4] {
        let g = Multigraph::complete(n);
        let ig = incidence_graph(&g);
        let opts = IsoOptions::default();
        let lifted: BTreeSet<_> = automorphisms(&g, &opts, 100_000)
            .unwrap()
            .iter()
            .map(|f| lift_automorphism(&g, &ig, f).unwrap())
            .collect();
        let stabilizing: BTreeSet<_> = automorphisms(&ig.graph, &opts, 100_000)
            .unwrap()
            .into_iter()
            .filter(|f| stabilizes_parts(&ig, f))
            .collect();
        assert_eq!(lifted.len(), (1..=n).product::<usize>());
        assert_eq!(lifted, stabilizing, "K{n}");
    }
}
