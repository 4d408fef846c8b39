mod common;

use std::collections::BTreeSet;

use common::{group_and_gens, phi, pick, psi, small_group};
use ggraphs::algebra::{Elem, FiniteGroup};
use ggraphs::ggraph::{component_analysis, kmn_build, kmn_plan, verify_structure};
use proptest::prelude::*;

fn independent(g: &FiniteGroup, s: Elem, t: Elem) -> bool {
    let hs: BTreeSet<Elem> = g.cyclic_subgroup(s).into_iter().collect();
    g.cyclic_subgroup(t).into_iter().all(|x| x == g.identity() || !hs.contains(&x))
}

/// Largest normal subgroup inside ⟨s⟩: the kernel of G acting on its cosets.
fn core_is_trivial(g: &FiniteGroup, s: Elem) -> bool {
    let hs: BTreeSet<Elem> = g.cyclic_subgroup(s).into_iter().collect();
    hs.iter().all(|&h| {
        h == g.identity() || g.elements().any(|x| !hs.contains(&g.mul(g.mul(g.inv(x), h), x)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn structure_holds_with_two_or_more_generators((g, s) in group_and_gens(2..=3)) {
        let r = verify_structure(&phi(&g, &s));
        prop_assert!(r.all_passed(), "{:?}", r);
        let r = verify_structure(&psi(&g, &s));
        prop_assert!(r.all_passed(), "{:?}", r);
    }

    // Φ(G,{s}) has no edges; its shifts separate G exactly when ⟨s⟩ contains
    // no nontrivial normal subgroup.
    #[test]
    fn single_generator_item_one((g, raw) in (small_group(), any::<usize>())) {
        let s = pick(&g, &[raw])[0];
        let r = verify_structure(&phi(&g, &[s]));
        prop_assert_eq!(r.item(1).passed, core_is_trivial(&g, s));
        for k in 2..=5 {
            prop_assert!(r.item(k).passed);
        }
        prop_assert!(verify_structure(&psi(&g, &[s])).all_passed());
    }

    #[test]
    fn levels_are_stables_and_colour_cliques_are_cliques((g, s) in group_and_gens(1..=3)) {
        let gg = phi(&g, &s);
        let graph = gg.graph();
        for (li, _) in gg.levels().iter().enumerate() {
            let level = gg.level(li);
            for &u in &level {
                for &v in &level {
                    prop_assert_eq!(graph.multiplicity(u, v), 0);
                }
            }
        }
        for x in g.elements() {
            let c = gg.colour_clique(x);
            prop_assert_eq!(c.len(), s.len());
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    let labeled = graph.edges_between(u, v).into_iter().any(|e| gg.edges()[e].label == x);
                    prop_assert!(labeled, "no edge labeled {} between {} and {}", x, u, v);
                }
            }
        }
    }

    #[test]
    fn simple_iff_pairwise_independent((g, s) in group_and_gens(1..=3)) {
        let expected = (0..s.len()).all(|i| (i + 1..s.len()).all(|j| independent(&g, s[i], s[j])));
        prop_assert_eq!(phi(&g, &s).graph().is_simple(), expected);
    }

    #[test]
    fn components_tile_the_edges((g, s) in group_and_gens(2..=3)) {
        let gg = phi(&g, &s);
        let r = component_analysis(&gg).unwrap();
        let pairs = s.len() * (s.len() - 1) / 2;
        let sub = g.generated_subgroup(&s).len();
        prop_assert_eq!(r.count, g.order() / sub);
        prop_assert_eq!(r.count, gg.graph().connected_components().len());
        for c in &r.components {
            prop_assert_eq!(r.count * c.edge_count, g.order() * pairs);
        }
        prop_assert!(r.all_passed(), "{:?}", r);
    }
}

#[test]
fn kmn_grid_builds() {
    for m in 1..=6 {
        for n in 1..=6 {
            for l in 1..=4 {
                let plan = kmn_plan(m, n, l).unwrap();
                let gg = kmn_build(&plan).unwrap();
                let kb = gg.graph().is_complete_bipartite_multi().unwrap();
                assert_eq!((kb.m, kb.n, kb.l), (m.min(n), m.max(n), l));
                assert!(plan.group.is_abelian());
            }
        }
    }
}
