//! Connected components of a G-graph, replication into several copies, and
//! the `s^m t^n` closure test for complete bipartiteness.

use serde::Serialize;

use super::{build_phi, build_psi, GGraph, GGraphError};
use crate::algebra::{cyclic_group, direct_product, Elem, FiniteGroup, GenMultiset};
use crate::multigraph::{isomorphic, IsoOptions};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub edge_count: usize,
    /// Union of the cosets of the component's vertices.
    pub label_coset: Vec<Elem>,
    pub label_coset_ok: bool,
    pub isomorphic_to_subgroup_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub count: usize,
    pub index: usize,
    pub subgroup_order: usize,
    pub components: Vec<ComponentInfo>,
}

impl ComponentReport {
    pub fn all_passed(&self) -> bool {
        self.count == self.index
            && self
                .components
                .iter()
                .all(|c| c.label_coset_ok && c.isomorphic_to_subgroup_graph)
    }
}

pub fn component_analysis(gg: &GGraph) -> Result<ComponentReport, GGraphError> {
    let group = gg.group();
    let sub_elems = group.generated_subgroup(&gg.gens().elements());
    let (sub, embedding) = group.subgroup(&sub_elems)?;
    let mut local = vec![usize::MAX; group.order()];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i;
    }
    let local_gens: Vec<Elem> = gg.gens().elements().iter().map(|&x| local[x]).collect();
    let local_ms = GenMultiset::new(&sub, &local_gens)?;
    let model = if gg.has_loops() {
        build_psi(&sub, &local_ms)
    } else {
        build_phi(&sub, &local_ms)
    };

    let mut components = Vec::new();
    for vertices in gg.graph().connected_components() {
        let mut label_coset: Vec<Elem> = vertices
            .iter()
            .flat_map(|&v| gg.vertex_info(v).1.elements.iter().copied())
            .collect();
        label_coset.sort_unstable();
        label_coset.dedup();
        let x = label_coset[0];
        let mut expected: Vec<Elem> = sub_elems.iter().map(|&h| group.mul(h, x)).collect();
        expected.sort_unstable();
        let (induced, _) = gg.graph().induced_subgraph(&vertices)?;
        let iso = isomorphic(&induced, model.graph(), &IsoOptions::default())?.is_some();
        components.push(ComponentInfo {
            edge_count: induced.edge_count(),
            vertices,
            label_coset_ok: expected == label_coset,
            label_coset,
            isomorphic_to_subgroup_graph: iso,
        });
    }
    Ok(ComponentReport {
        count: components.len(),
        index: group.order() / sub.order(),
        subgroup_order: sub.order(),
        components,
    })
}

/// `Φ(G × Z/k, {(s,0)})`: `k` disjoint copies of a connected `Φ(G,S)`.
pub fn replicate_components(gg0: &GGraph, k: usize) -> Result<GGraph, GGraphError> {
    if k == 0 {
        return Err(GGraphError::Precondition("k must be positive".into()));
    }
    if !gg0.graph().is_connected() {
        return Err(GGraphError::Precondition("the G-graph must be connected".into()));
    }
    let product = direct_product(gg0.group(), &cyclic_group(k));
    let gens: Vec<Elem> = gg0.gens().elements().iter().map(|&s| s * k).collect();
    let ms = GenMultiset::new(&product, &gens)?;
    let out = if gg0.has_loops() {
        build_psi(&product, &ms)
    } else {
        build_phi(&product, &ms)
    };
    let report = component_analysis(&out)?;
    if report.count != k || !report.all_passed() {
        return Err(GGraphError::Assertion(format!(
            "expected {k} isomorphic components, found {}",
            report.count
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairwiseProduct {
    /// Every element of `⟨s,t⟩` is some `s^m t^n`.
    pub closed: bool,
    /// `Φ(⟨s,t⟩,{s,t})` is complete bipartite.
    pub complete_bipartite: bool,
}

pub fn pairwise_product_closed(group: &FiniteGroup, s: Elem, t: Elem) -> Result<PairwiseProduct, GGraphError> {
    group.check_element(s)?;
    group.check_element(t)?;
    let hs = group.cyclic_subgroup(s);
    let ht = group.cyclic_subgroup(t);
    let mut products: Vec<Elem> = hs
        .iter()
        .flat_map(|&a| ht.iter().map(move |&b| (a, b)))
        .map(|(a, b)| group.mul(a, b))
        .collect();
    products.sort_unstable();
    products.dedup();
    let sub_elems = group.generated_subgroup(&[s, t]);
    let closed = products == sub_elems;

    let (sub, embedding) = group.subgroup(&sub_elems)?;
    let local = |x: Elem| embedding.binary_search(&x).expect("generator lies in the subgroup");
    let ms = GenMultiset::new(&sub, &[local(s), local(t)])?;
    let complete_bipartite = build_phi(&sub, &ms).graph().is_complete_bipartite_multi().is_some();
    Ok(PairwiseProduct {
        closed,
        complete_bipartite,
    })
}
