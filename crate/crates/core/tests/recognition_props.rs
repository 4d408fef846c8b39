mod common;

use std::collections::BTreeSet;

use common::{group_and_gens, phi, psi};
use ggraphs::recognition::{check_simple, check_with_loops, reconstruct, shifts_of, ConditionKind, RecognitionWitness};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifts_pass_and_reconstruct((g, s) in group_and_gens(2..=3)) {
        let gg = phi(&g, &s);
        let w = shifts_of(&gg).unwrap();
        prop_assert_eq!(w.h.len(), g.order());
        let r = check_simple(gg.graph(), &w).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        let rec = reconstruct(gg.graph(), &w, false).unwrap();
        rec.iso.verify(rec.ggraph.graph(), gg.graph()).unwrap();
        prop_assert_eq!(rec.group.order(), g.order());
        let mut want: Vec<usize> = s.iter().map(|&x| g.element_order(x)).collect();
        let mut got: Vec<usize> = rec.gens.elements().iter().map(|&x| rec.group.element_order(x)).collect();
        want.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn loops_variant_reconstructs((g, s) in group_and_gens(1..=3)) {
        let gg = psi(&g, &s);
        let w = shifts_of(&gg).unwrap();
        let r = check_with_loops(gg.graph(), &w).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        let rec = reconstruct(gg.graph(), &w, true).unwrap();
        rec.iso.verify(rec.ggraph.graph(), gg.graph()).unwrap();
    }

    // Stab_H u acts regularly on the edges from u into every other level,
    // for every vertex u and not only those of C_e.
    #[test]
    fn stabilizers_act_regularly_everywhere((g, s) in group_and_gens(2..=3)) {
        let gg = phi(&g, &s);
        let graph = gg.graph();
        let shifts = gg.shifts().unwrap();
        for u in 0..graph.vertex_count() {
            let own = gg.vertex_info(u).0;
            let stab: Vec<_> = shifts.iter().filter(|x| x.map.vertex_map[u] == u).collect();
            prop_assert_eq!(stab.len(), g.element_order(gg.levels()[own].gen));
            for other in (0..gg.levels().len()).filter(|&l| l != own) {
                let edges: BTreeSet<usize> = graph
                    .incident_edges(u)
                    .iter()
                    .copied()
                    .filter(|&e| gg.vertex_info(graph.edge(e).other(u)).0 == other)
                    .collect();
                prop_assert_eq!(edges.len(), stab.len());
                let a = *edges.iter().next().unwrap();
                let images: BTreeSet<usize> = stab.iter().map(|x| x.map.edge_map[a]).collect();
                prop_assert_eq!(images, edges.clone());
            }
        }
    }

    #[test]
    fn deleting_an_edge_breaks_regularity(((g, s), pick) in (group_and_gens(2..=3), any::<prop::sample::Index>())) {
        let gg = phi(&g, &s);
        let a = pick.index(gg.graph().edge_count());
        let label = gg.edges()[a].label;
        let mut damaged = gg.graph().clone();
        damaged.remove_edge(a);
        let w = shifts_of(&gg).unwrap();
        for c in [gg.colour_clique(label), gg.colour_clique(g.identity())] {
            let witness = RecognitionWitness { h: w.h.clone(), c };
            let r = check_simple(&damaged, &witness).unwrap();
            prop_assert!(!r.condition(ConditionKind::RegularAction).unwrap().passed);
            prop_assert!(reconstruct(&damaged, &witness, false).is_err());
        }
    }
}
