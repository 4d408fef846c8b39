//! Recognizing G-graphs from a group of automorphisms `H` and a clique `C`.
//!
//! [`check_with_loops`] tests the conditions for `Γ ≅ Ψ(H,S)` and
//! [`check_simple`] those for a loop-free `Γ ≅ Φ(H,S)`. When they hold,
//! [`reconstruct`] builds `S = {σ_u : u ∈ C}` with `σ_u` a generator of
//! `Stab_H u`, and the isomorphism `⟨σ_u⟩h ↦ h⁻¹(u)`.
//!
//! `H` is always given by the caller, either as a closed list or as
//! generators closed under composition here; `Aut(Γ)` is never computed.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteGroup, GenMultiset, DEFAULT_CLOSURE_CAP};
use crate::ggraph::{build_phi, build_psi, GGraph};
use crate::multigraph::{GraphMap, Multigraph};

#[derive(Debug, Error)]
pub enum RecognitionError {
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("group closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// The reconstructed map failed verification; this is a bug.
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

/// `H` as an explicit list of automorphisms (identity included) and `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionWitness {
    pub h: Vec<GraphMap>,
    pub c: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(rename = "H_generators")]
    pub h_generators: Vec<Vec<usize>>,
    #[serde(rename = "C")]
    pub c: Vec<usize>,
    #[serde(rename = "H_edge_maps", default, skip_serializing_if = "Option::is_none")]
    pub h_edge_maps: Option<Vec<Vec<usize>>>,
}

fn is_perm(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Edge map of a vertex permutation when every multi-edge it touches has
/// multiplicity one.
fn infer_edge_map(g: &Multigraph, vertex_map: &[usize]) -> Result<Vec<usize>, RecognitionError> {
    let mut by_key: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        by_key.entry(e.key()).or_default().push(i);
    }
    g.edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
            match by_key.get(&(a.min(b), a.max(b))).map(Vec::as_slice) {
                Some([only]) => Ok(*only),
                Some(_) => Err(RecognitionError::WitnessInvalid(format!(
                    "edge {i} lies in a multi-edge; its image must be given in H_edge_maps"
                ))),
                None => Err(RecognitionError::WitnessInvalid(format!(
                    "edge {i} = {{{}, {}}} has no image",
                    e.u, e.v
                ))),
            }
        })
        .collect()
}

impl RecognitionWitness {
    /// Closes `gens` under composition, starting from the identity.
    pub fn from_generators(
        g: &Multigraph,
        gens: &[GraphMap],
        c: Vec<usize>,
        cap: usize,
    ) -> Result<Self, RecognitionError> {
        for (i, x) in gens.iter().enumerate() {
            if !is_perm(&x.vertex_map, g.vertex_count()) || !is_perm(&x.edge_map, g.edge_count()) {
                return Err(RecognitionError::WitnessInvalid(format!("generator {i} is not a bijection")));
            }
        }
        let id = GraphMap::identity(g);
        let mut seen: HashMap<GraphMap, usize> = HashMap::from([(id.clone(), 0)]);
        let mut h = vec![id];
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for x in gens {
                let y = h[i].compose(x);
                if !seen.contains_key(&y) {
                    if h.len() == cap {
                        return Err(RecognitionError::CapExceeded { cap });
                    }
                    seen.insert(y.clone(), h.len());
                    queue.push_back(h.len());
                    h.push(y);
                }
            }
        }
        Ok(RecognitionWitness { h, c })
    }

    /// Parses witness JSON against `g`. Vertex ids are the dense ids of `g`.
    pub fn from_json(g: &Multigraph, text: &str) -> Result<Self, RecognitionError> {
        let doc: WitnessJson =
            serde_json::from_str(text).map_err(|e| RecognitionError::WitnessInvalid(e.to_string()))?;
        Self::from_doc(g, &doc)
    }

    pub fn from_doc(g: &Multigraph, doc: &WitnessJson) -> Result<Self, RecognitionError> {
        if let Some(maps) = &doc.h_edge_maps {
            if maps.len() != doc.h_generators.len() {
                return Err(RecognitionError::WitnessInvalid(
                    "H_edge_maps must have one entry per generator".into(),
                ));
            }
        }
        let mut gens = Vec::with_capacity(doc.h_generators.len());
        for (i, vm) in doc.h_generators.iter().enumerate() {
            if !is_perm(vm, g.vertex_count()) {
                return Err(RecognitionError::WitnessInvalid(format!("generator {i} is not a vertex permutation")));
            }
            let edge_map = match &doc.h_edge_maps {
                Some(maps) => maps[i].clone(),
                None => infer_edge_map(g, vm)?,
            };
            gens.push(GraphMap {
                vertex_map: vm.clone(),
                edge_map,
            });
        }
        if let Some(&bad) = doc.c.iter().find(|&&u| u >= g.vertex_count()) {
            return Err(RecognitionError::WitnessInvalid(format!("C contains unknown vertex {bad}")));
        }
        Self::from_generators(g, &gens, doc.c.clone(), DEFAULT_CLOSURE_CAP)
    }

    /// Every element of `H` is written as a generator, with its edge map.
    pub fn to_doc(&self) -> WitnessJson {
        WitnessJson {
            h_generators: self.h.iter().map(|x| x.vertex_map.clone()).collect(),
            c: self.c.clone(),
            h_edge_maps: Some(self.h.iter().map(|x| x.edge_map.clone()).collect()),
        }
    }
}

/// `H = {δ_g}` and `C = C_e`.
pub fn shifts_of(gg: &GGraph) -> Result<RecognitionWitness, RecognitionError> {
    let group = gg.group();
    let mut h = Vec::with_capacity(group.order());
    for g in group.elements() {
        let s = gg.try_shift(g).ok_or_else(|| {
            RecognitionError::WitnessInvalid(format!(
                "edge labels do not support the shift by {}",
                group.format_element(g)
            ))
        })?;
        // Without edges distinct elements can induce the same map.
        if !h.contains(&s.map) {
            h.push(s.map);
        }
    }
    Ok(RecognitionWitness {
        h,
        c: gg.colour_clique(group.identity()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionKind {
    /// `H` is a group of automorphisms of `Γ`.
    AutomorphismGroup,
    /// `C` is a clique, with a loop on each vertex for the loop variant.
    Clique,
    /// Every `H`-orbit is a stable.
    OrbitsStable,
    /// `C` meets every orbit.
    MeetsEveryOrbit,
    /// `Stab_H u` is cyclic for `u ∈ C`.
    CyclicStabilizers,
    /// `Stab_H u` acts regularly on the edges from `u` into each orbit.
    RegularAction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub kind: ConditionKind,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    pub with_loops: bool,
    pub orbits: Vec<Vec<usize>>,
    pub conditions: Vec<Condition>,
}

impl RecognitionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, kind: ConditionKind) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.kind == kind)
    }
}

struct Analysis<'a> {
    g: &'a Multigraph,
    w: &'a RecognitionWitness,
    edges_ok: bool,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl<'a> Analysis<'a> {
    fn new(g: &'a Multigraph, w: &'a RecognitionWitness) -> Result<Self, RecognitionError> {
        for (i, x) in w.h.iter().enumerate() {
            if !is_perm(&x.vertex_map, g.vertex_count()) {
                return Err(RecognitionError::WitnessInvalid(format!(
                    "element {i} of H is not a vertex permutation of the graph"
                )));
            }
        }
        if let Some(&bad) = w.c.iter().find(|&&u| u >= g.vertex_count()) {
            return Err(RecognitionError::WitnessInvalid(format!("C contains unknown vertex {bad}")));
        }
        let edges_ok = w.h.iter().all(|x| is_perm(&x.edge_map, g.edge_count()));
        let n = g.vertex_count();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for v in 0..n {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![v];
            orbit_of[v] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for h in &w.h {
                    let y = h.vertex_map[x];
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(Analysis {
            g,
            w,
            edges_ok,
            orbit_of,
            orbits,
        })
    }

    fn group_condition(&self) -> Option<String> {
        if !self.edges_ok {
            return Some("some edge map is not a bijection of the edge set".into());
        }
        for (i, h) in self.w.h.iter().enumerate() {
            if let Err(e) = h.verify_automorphism(self.g) {
                return Some(format!("element {i} is not an automorphism: {e}"));
            }
        }
        let index: HashMap<&GraphMap, usize> = self.w.h.iter().enumerate().map(|(i, h)| (h, i)).collect();
        if index.len() != self.w.h.len() {
            return Some("H lists some automorphism twice".into());
        }
        if !index.contains_key(&GraphMap::identity(self.g)) {
            return Some("identity is missing".into());
        }
        for (i, a) in self.w.h.iter().enumerate() {
            for (j, b) in self.w.h.iter().enumerate() {
                if !index.contains_key(&a.compose(b)) {
                    return Some(format!("h{i}∘h{j} is not in H"));
                }
            }
        }
        None
    }

    fn clique_condition(&self, loops: bool) -> Option<String> {
        let c = &self.w.c;
        let distinct: BTreeSet<usize> = c.iter().copied().collect();
        if distinct.len() != c.len() {
            return Some("C has a repeated vertex".into());
        }
        for (i, &u) in c.iter().enumerate() {
            if loops && self.g.loop_count(u) == 0 {
                return Some(format!("vertex {u} of C has no loop"));
            }
            for &v in &c[i + 1..] {
                if self.g.multiplicity(u, v) == 0 {
                    return Some(format!("vertices {u} and {v} of C are not adjacent"));
                }
            }
        }
        None
    }

    fn stable_condition(&self) -> Option<String> {
        self.g.edges().iter().enumerate().find_map(|(i, e)| {
            (self.orbit_of[e.u] == self.orbit_of[e.v])
                .then(|| format!("edge {i} = {{{}, {}}} lies inside one orbit", e.u, e.v))
        })
    }

    fn meets_condition(&self) -> Option<String> {
        let hit: BTreeSet<usize> = self.w.c.iter().map(|&u| self.orbit_of[u]).collect();
        (0..self.orbits.len())
            .find(|o| !hit.contains(o))
            .map(|o| format!("C misses the orbit of vertex {}", self.orbits[o][0]))
    }

    fn stabilizer(&self, u: usize) -> Vec<usize> {
        (0..self.w.h.len()).filter(|&i| self.w.h[i].vertex_map[u] == u).collect()
    }

    /// Order of an element, using edge maps when they are usable.
    fn order(&self, i: usize) -> Option<usize> {
        let x = &self.w.h[i];
        let is_id = |y: &GraphMap| {
            y.vertex_map.iter().enumerate().all(|(a, &b)| a == b)
                && (!self.edges_ok || y.edge_map.iter().enumerate().all(|(a, &b)| a == b))
        };
        let mut y = x.clone();
        for k in 1..=self.w.h.len() {
            if is_id(&y) {
                return Some(k);
            }
            y = if self.edges_ok {
                y.compose(x)
            } else {
                GraphMap {
                    vertex_map: x.vertex_map.iter().map(|&v| y.vertex_map[v]).collect(),
                    edge_map: Vec::new(),
                }
            };
        }
        None
    }

    fn cyclic_condition(&self) -> Option<String> {
        for &u in &self.w.c {
            let stab = self.stabilizer(u);
            if !stab.iter().any(|&i| self.order(i) == Some(stab.len())) {
                return Some(format!("Stab_H {u} (order {}) is not cyclic", stab.len()));
            }
        }
        None
    }

    fn regular_condition(&self, skip_own_orbit: bool) -> Option<String> {
        for &u in &self.w.c {
            let stab = self.stabilizer(u);
            for (o, orbit) in self.orbits.iter().enumerate() {
                if skip_own_orbit && orbit.binary_search(&u).is_ok() {
                    continue;
                }
                let edges: BTreeSet<usize> = self
                    .g
                    .incident_edges(u)
                    .iter()
                    .copied()
                    .filter(|&e| self.orbit_of[self.g.edge(e).other(u)] == o)
                    .collect();
                if edges.len() != stab.len() {
                    return Some(format!(
                        "vertex {u} has {} edges into the orbit of {} but |Stab_H {u}| = {}",
                        edges.len(),
                        orbit[0],
                        stab.len()
                    ));
                }
                if !self.edges_ok {
                    return Some("edge maps unavailable, edge action cannot be evaluated".into());
                }
                let first = *edges.iter().next().expect("nonempty, equal to |Stab|");
                let reached: BTreeSet<usize> = stab.iter().map(|&i| self.w.h[i].edge_map[first]).collect();
                if reached != edges {
                    return Some(format!(
                        "Stab_H {u} is not transitive on the edges into the orbit of {}",
                        orbit[0]
                    ));
                }
            }
        }
        None
    }
}

fn cond(kind: ConditionKind, failure: Option<String>) -> Condition {
    Condition {
        kind,
        passed: failure.is_none(),
        detail: failure,
    }
}

/// Conditions for `Γ` to be a G-graph with loops.
pub fn check_with_loops(g: &Multigraph, w: &RecognitionWitness) -> Result<RecognitionReport, RecognitionError> {
    let a = Analysis::new(g, w)?;
    let conditions = vec![
        cond(ConditionKind::AutomorphismGroup, a.group_condition()),
        cond(ConditionKind::Clique, a.clique_condition(true)),
        cond(ConditionKind::MeetsEveryOrbit, a.meets_condition()),
        cond(ConditionKind::CyclicStabilizers, a.cyclic_condition()),
        cond(ConditionKind::RegularAction, a.regular_condition(false)),
    ];
    Ok(RecognitionReport {
        with_loops: true,
        orbits: a.orbits,
        conditions,
    })
}

/// Conditions for a loop-free `Γ` to be a G-graph.
pub fn check_simple(g: &Multigraph, w: &RecognitionWitness) -> Result<RecognitionReport, RecognitionError> {
    if g.has_loops() {
        return Err(RecognitionError::WitnessInvalid("graph has loops; use the loop variant".into()));
    }
    let a = Analysis::new(g, w)?;
    let conditions = vec![
        cond(ConditionKind::AutomorphismGroup, a.group_condition()),
        cond(ConditionKind::Clique, a.clique_condition(false)),
        cond(ConditionKind::OrbitsStable, a.stable_condition()),
        cond(ConditionKind::MeetsEveryOrbit, a.meets_condition()),
        cond(ConditionKind::CyclicStabilizers, a.cyclic_condition()),
        cond(ConditionKind::RegularAction, a.regular_condition(true)),
    ];
    Ok(RecognitionReport {
        with_loops: false,
        orbits: a.orbits,
        conditions,
    })
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    /// `H` as an abstract group; element `i` is `elements[i]`.
    pub group: FiniteGroup,
    pub elements: Vec<GraphMap>,
    pub gens: GenMultiset,
    pub ggraph: GGraph,
    /// Isomorphism from `Φ(H,S)` (or `Ψ(H,S)`) onto the input graph.
    pub iso: GraphMap,
}

/// Builds `(H, S)` and a verified isomorphism `Φ(H,S) → Γ` (or `Ψ`).
pub fn reconstruct(
    g: &Multigraph,
    w: &RecognitionWitness,
    with_loops: bool,
) -> Result<ReconstructionResult, RecognitionError> {
    let report = if with_loops {
        check_with_loops(g, w)?
    } else {
        check_simple(g, w)?
    };
    if let Some(bad) = report.conditions.iter().find(|c| !c.passed) {
        return Err(RecognitionError::WitnessInvalid(format!(
            "{:?}: {}",
            bad.kind,
            bad.detail.clone().unwrap_or_default()
        )));
    }

    let id = GraphMap::identity(g);
    let mut elements = vec![id.clone()];
    elements.extend(w.h.iter().filter(|x| **x != id).cloned());
    let index: HashMap<&GraphMap, usize> = elements.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
        .collect();
    let names = (0..elements.len()).map(|i| format!("h{i}")).collect();
    let group = FiniteGroup::from_table("H", table, Some(names))?;

    let mut sigma = Vec::with_capacity(w.c.len());
    for &u in &w.c {
        let stab: Vec<usize> = (0..elements.len()).filter(|&i| elements[i].vertex_map[u] == u).collect();
        let best = stab
            .iter()
            .copied()
            .filter(|&i| group.element_order(i) == stab.len())
            .min_by(|&a, &b| elements[a].cmp(&elements[b]))
            .ok_or_else(|| RecognitionError::Assertion(format!("Stab_H {u} has no generator")))?;
        sigma.push(best);
    }
    let gens = GenMultiset::new(&group, &sigma)?;
    let ggraph = if with_loops {
        build_psi(&group, &gens)
    } else {
        build_phi(&group, &gens)
    };

    let vertex_map: Vec<usize> = (0..ggraph.vertex_count())
        .map(|v| {
            let (level, coset) = ggraph.vertex_info(v);
            elements[group.inv(coset.rep)].vertex_map[w.c[level]]
        })
        .collect();
    let level_of = |v: usize| ggraph.vertex_info(v).0;
    let mut base_edge: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edge_map = Vec::with_capacity(ggraph.edges().len());
    for e in ggraph.edges() {
        let (u, v) = (w.c[level_of(e.u)], w.c[level_of(e.v)]);
        let key = (u.min(v), u.max(v));
        let x0 = match base_edge.get(&key) {
            Some(&x) => x,
            None => {
                let x = *g
                    .edges_between(u, v)
                    .first()
                    .ok_or_else(|| RecognitionError::Assertion(format!("no edge between {u} and {v}")))?;
                base_edge.insert(key, x);
                x
            }
        };
        edge_map.push(elements[group.inv(e.label)].edge_map[x0]);
    }
    let iso = GraphMap {
        vertex_map,
        edge_map,
    };
    iso.verify(ggraph.graph(), g).map_err(RecognitionError::Assertion)?;
    Ok(ReconstructionResult {
        group,
        elements,
        gens,
        ggraph,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group, parse_elements, quaternion_group, symmetric_group, Elem};

    fn phi(g: &FiniteGroup, s: &[Elem]) -> GGraph {
        build_phi(g, &GenMultiset::new(g, s).unwrap())
    }

    fn psi(g: &FiniteGroup, s: &[Elem]) -> GGraph {
        build_psi(g, &GenMultiset::new(g, s).unwrap())
    }

    #[test]
    fn psi_z6_passes_and_fails_without_a_level() {
        let gg = psi(&cyclic_group(6), &[2, 3]);
        let mut w = shifts_of(&gg).unwrap();
        assert_eq!(w.h.len(), 6);
        let r = check_with_loops(gg.graph(), &w).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.orbits.len(), 2);
        w.c.pop();
        let r = check_with_loops(gg.graph(), &w).unwrap();
        assert!(!r.condition(ConditionKind::MeetsEveryOrbit).unwrap().passed);
    }

    #[test]
    fn psi_s3_passes() {
        let s3 = symmetric_group(3);
        let s = parse_elements(&s3, "(1 2 3),(1 2)").unwrap();
        let gg = psi(&s3, &s);
        assert!(check_with_loops(gg.graph(), &shifts_of(&gg).unwrap()).unwrap().passed());
    }

    #[test]
    fn stabilizer_is_generated_by_the_shift() {
        let z6 = cyclic_group(6);
        let gg = phi(&z6, &[2, 3]);
        let w = shifts_of(&gg).unwrap();
        let u = gg.vertex_of(0, 0);
        let stab: Vec<usize> = (0..6).filter(|&i| w.h[i].vertex_map[u] == u).collect();
        assert_eq!(stab, z6.cyclic_subgroup(2));
    }

    #[test]
    fn edgeless_phi_collapses_shifts() {
        // Φ(Z6,{1}) is one vertex: every shift is the identity, so G ≅ {δ_g} fails
        // but the graph is still recognized, as Φ of the trivial group.
        let gg = phi(&cyclic_group(6), &[1]);
        assert!(!crate::ggraph::verify_structure(&gg).item(1).passed);
        let w = shifts_of(&gg).unwrap();
        assert_eq!(w.h.len(), 1);
        let r = reconstruct(gg.graph(), &w, false).unwrap();
        assert_eq!(r.group.order(), 1);
        r.iso.verify(r.ggraph.graph(), gg.graph()).unwrap();

        let s3 = symmetric_group(3);
        let s = parse_elements(&s3, "(1 2)").unwrap();
        let gg = phi(&s3, &s);
        assert!(crate::ggraph::verify_structure(&gg).all_passed());
        assert_eq!(shifts_of(&gg).unwrap().h.len(), 6);
    }

    #[test]
    fn round_trip_z6() {
        let z6 = cyclic_group(6);
        let gg = phi(&z6, &[2, 3]);
        let r = reconstruct(gg.graph(), &shifts_of(&gg).unwrap(), false).unwrap();
        assert_eq!(r.group.order(), 6);
        let orders: Vec<usize> = r.gens.elements().iter().map(|&x| r.group.element_order(x)).collect();
        assert_eq!(orders, vec![3, 2]);
    }

    #[test]
    fn round_trip_repeated_generator() {
        let gg = phi(&cyclic_group(2), &[1, 1]);
        let r = reconstruct(gg.graph(), &shifts_of(&gg).unwrap(), false).unwrap();
        let e = r.gens.elements();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0], e[1]);
    }

    #[test]
    fn round_trip_q8_with_loops() {
        let q8 = quaternion_group();
        let s = parse_elements(&q8, "i,j").unwrap();
        let gg = psi(&q8, &s);
        let r = reconstruct(gg.graph(), &shifts_of(&gg).unwrap(), true).unwrap();
        assert_eq!(r.group.order(), 8);
    }

    fn hexagon_map(f: impl Fn(usize) -> usize) -> GraphMap {
        let c6 = Multigraph::cycle(6);
        let vertex_map: Vec<usize> = (0..6).map(f).collect();
        let edge_map = infer_edge_map(&c6, &vertex_map).unwrap();
        GraphMap { vertex_map, edge_map }
    }

    #[test]
    fn hexagon() {
        let c6 = Multigraph::cycle(6);
        let rot2 = hexagon_map(|v| (v + 2) % 6);
        let refl = hexagon_map(|v| (6 - v) % 6);
        // rotations alone: trivial stabilizers but two edges into the other orbit
        let w = RecognitionWitness::from_generators(&c6, std::slice::from_ref(&rot2), vec![0, 1], 100).unwrap();
        assert_eq!(w.h.len(), 3);
        let r = check_simple(&c6, &w).unwrap();
        assert!(!r.condition(ConditionKind::RegularAction).unwrap().passed);

        let w = RecognitionWitness::from_generators(&c6, &[rot2, refl], vec![0, 1], 100).unwrap();
        assert_eq!(w.h.len(), 6);
        assert!(check_simple(&c6, &w).unwrap().passed());
        let r = reconstruct(&c6, &w, false).unwrap();
        assert_eq!(r.group.order(), 6);
        assert!(!r.group.is_abelian());
    }

    #[test]
    fn triangle() {
        let k3 = Multigraph::complete(3);
        // trivial H: three one-vertex levels
        let w = RecognitionWitness::from_generators(&k3, &[], vec![0, 1, 2], 10).unwrap();
        assert!(check_simple(&k3, &w).unwrap().passed());
        assert_eq!(reconstruct(&k3, &w, false).unwrap().group.order(), 1);

        let rot = GraphMap {
            vertex_map: vec![1, 2, 0],
            edge_map: infer_edge_map(&k3, &[1, 2, 0]).unwrap(),
        };
        let w = RecognitionWitness::from_generators(&k3, &[rot], vec![0], 10).unwrap();
        let r = check_simple(&k3, &w).unwrap();
        assert!(!r.condition(ConditionKind::OrbitsStable).unwrap().passed);
        assert!(reconstruct(&k3, &w, false).is_err());
    }

    #[test]
    fn deleted_edge_breaks_regularity() {
        let gg = phi(&cyclic_group(6), &[2, 3]);
        let w = shifts_of(&gg).unwrap();
        let mut g = gg.graph().clone();
        g.remove_edge(0);
        let r = check_simple(&g, &w).unwrap();
        assert!(!r.condition(ConditionKind::RegularAction).unwrap().passed);
    }

    #[test]
    fn relabeled_edge_has_no_shift_witness() {
        let mut gg = phi(&cyclic_group(6), &[2, 3]);
        gg.set_edge_label(0, 1);
        assert!(matches!(shifts_of(&gg), Err(RecognitionError::WitnessInvalid(_))));
    }

    #[test]
    fn json_witness_round_trip() {
        let gg = phi(&cyclic_group(6), &[2, 3]);
        let w = shifts_of(&gg).unwrap();
        let text = serde_json::to_string(&w.to_doc()).unwrap();
        let back = RecognitionWitness::from_json(gg.graph(), &text).unwrap();
        assert_eq!(back.h.len(), 6);
        // vertex maps alone suffice on a simple graph
        let doc = WitnessJson {
            h_generators: vec![w.h[1].vertex_map.clone()],
            c: w.c.clone(),
            h_edge_maps: None,
        };
        let inferred = RecognitionWitness::from_doc(gg.graph(), &doc).unwrap();
        assert_eq!(inferred.h.len(), 6);
        assert!(check_simple(gg.graph(), &inferred).unwrap().passed());
    }

    #[test]
    fn multi_edge_needs_explicit_edge_maps() {
        let gg = phi(&cyclic_group(2), &[1, 1]);
        let doc = WitnessJson {
            h_generators: vec![vec![0, 1]],
            c: vec![0, 1],
            h_edge_maps: None,
        };
        assert!(RecognitionWitness::from_doc(gg.graph(), &doc).is_err());
    }
}
