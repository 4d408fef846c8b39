#![allow(dead_code)]

use ggraphs::algebra::{cyclic_group, dihedral_group, direct_product, quaternion_group, symmetric_group, Elem, FiniteGroup, GenMultiset};
use ggraphs::ggraph::{build_phi, build_psi, GGraph};
use proptest::prelude::*;

/// Groups of order at most 48 in every representation.
pub fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..=48).prop_map(cyclic_group),
        (2usize..=6, 2usize..=8)
            .prop_filter("order <= 48", |(a, b)| a * b <= 48)
            .prop_map(|(a, b)| direct_product(&cyclic_group(a), &cyclic_group(b))),
        Just(direct_product(&direct_product(&cyclic_group(2), &cyclic_group(2)), &cyclic_group(2))),
        (3usize..=24).prop_map(dihedral_group),
        (1usize..=4).prop_map(symmetric_group),
        Just(quaternion_group()),
    ]
}

/// Picks elements of `g` from raw indices.
pub fn pick(g: &FiniteGroup, raw: &[usize]) -> Vec<Elem> {
    raw.iter().map(|&r| r % g.order()).collect()
}

/// A group with a generator multiset of the given size range.
pub fn group_and_gens(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (FiniteGroup, Vec<Elem>)> {
    (small_group(), prop::collection::vec(any::<usize>(), sizes)).prop_map(|(g, raw)| {
        let s = pick(&g, &raw);
        (g, s)
    })
}

pub fn phi(g: &FiniteGroup, s: &[Elem]) -> GGraph {
    build_phi(g, &GenMultiset::new(g, s).unwrap())
}

pub fn psi(g: &FiniteGroup, s: &[Elem]) -> GGraph {
    build_psi(g, &GenMultiset::new(g, s).unwrap())
}
