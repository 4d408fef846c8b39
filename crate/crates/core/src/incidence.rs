//! Incidence (Levi) graphs and the two directions of the bipartite incidence
//! test for `Φ(G,{s,t})`.
//!
//! In `IΓ` the original vertices come first (part tag 0), followed by one
//! vertex per original edge (part tag 1). A loop of `Γ` gives a single
//! incidence edge; graphs with loops are flagged since the theorems here
//! assume loop-free sources.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteGroup, GenMultiset};
use crate::ggraph::{build_phi, GGraph};
use crate::multigraph::{GraphError, GraphMap, Multigraph};
use crate::recognition::{check_simple, RecognitionError, RecognitionReport, RecognitionWitness};

/// Default node budget of the automorphism search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

pub const ORIG_VERTEX: u32 = 0;
pub const ORIG_EDGE: u32 = 1;

#[derive(Debug, Error)]
pub enum IncidenceError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exceeded its budget of {budget} nodes")]
    CapExceeded { budget: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Recognition(#[from] RecognitionError),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub graph: Multigraph,
    pub source_vertices: usize,
    pub source_edges: usize,
    /// Set when the source has loops.
    pub outside_theory: bool,
}

impl IncidenceGraph {
    pub fn vertex_node(&self, v: usize) -> usize {
        v
    }

    pub fn edge_node(&self, e: usize) -> usize {
        self.source_vertices + e
    }
}

pub fn incidence_graph(g: &Multigraph) -> IncidenceGraph {
    let mut out = Multigraph::new();
    for v in g.vertices() {
        out.add_vertex(v.label.clone(), Some(ORIG_VERTEX));
    }
    for (i, e) in g.edges().iter().enumerate() {
        let label = e.label.clone().unwrap_or_else(|| format!("e{i}"));
        out.add_vertex(label, Some(ORIG_EDGE));
    }
    let nv = g.vertex_count();
    for (i, e) in g.edges().iter().enumerate() {
        out.add_edge(e.u, nv + i, None).expect("valid ids");
        if !e.is_loop() {
            out.add_edge(e.v, nv + i, None).expect("valid ids");
        }
    }
    IncidenceGraph {
        graph: out,
        source_vertices: nv,
        source_edges: g.edge_count(),
        outside_theory: g.has_loops(),
    }
}

/// `f ↦ f̃`: `f` on original vertices and `f#` on edge-vertices.
pub fn lift_automorphism(g: &Multigraph, ig: &IncidenceGraph, f: &GraphMap) -> Result<GraphMap, IncidenceError> {
    f.verify_automorphism(g).map_err(IncidenceError::Precondition)?;
    let nv = ig.source_vertices;
    let vertex_map: Vec<usize> = f
        .vertex_map
        .iter()
        .copied()
        .chain(f.edge_map.iter().map(|&e| nv + e))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        ig.graph.edges().iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
    let mut edge_map = Vec::with_capacity(ig.graph.edge_count());
    for e in ig.graph.edges() {
        let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
        let image = index
            .get(&(a.min(b), a.max(b)))
            .ok_or_else(|| IncidenceError::Assertion("lifted map breaks an incidence".into()))?;
        edge_map.push(*image);
    }
    let lifted = GraphMap {
        vertex_map,
        edge_map,
    };
    lifted
        .verify_automorphism(&ig.graph)
        .map_err(IncidenceError::Assertion)?;
    Ok(lifted)
}

/// Whether an automorphism of `IΓ` keeps original vertices among original
/// vertices, i.e. lies in the image of [`lift_automorphism`].
pub fn stabilizes_parts(ig: &IncidenceGraph, phi: &GraphMap) -> bool {
    let nv = ig.source_vertices;
    phi.vertex_map.iter().enumerate().all(|(x, &y)| (x < nv) == (y < nv))
}

fn level_pair(gg: &GGraph) -> Result<(), IncidenceError> {
    if gg.levels().len() != 2 {
        return Err(IncidenceError::Precondition(format!(
            "need exactly two generators, got {}",
            gg.levels().len()
        )));
    }
    Ok(())
}

/// For a simple `Φ(G,{s,t})` with `o(t) = 2`, the graph `Γ'` on `V_s` with
/// one edge `{⟨s⟩x, ⟨s⟩tx}` per coset `⟨t⟩x`, and an isomorphism
/// `Φ(G,{s,t}) → IΓ'`.
pub fn incidence_preimage(gg: &GGraph) -> Result<(Multigraph, GraphMap), IncidenceError> {
    level_pair(gg)?;
    let group = gg.group();
    let (ls, lt) = if group.element_order(gg.levels()[1].gen) == 2 {
        (0, 1)
    } else if group.element_order(gg.levels()[0].gen) == 2 {
        (1, 0)
    } else {
        return Err(IncidenceError::Precondition("no generator of order 2".into()));
    };
    if !gg.graph().is_simple() {
        return Err(IncidenceError::Precondition("the G-graph is not simple".into()));
    }
    let t = gg.levels()[lt].gen;
    let s_level = &gg.levels()[ls];
    let mut pre = Multigraph::new();
    for c in &s_level.cosets {
        pre.add_vertex(gg.graph().vertex(s_level.vertex_range().start + s_level.coset_index(c.rep)).label.clone(), None);
    }
    for c in &gg.levels()[lt].cosets {
        let x = c.rep;
        let label = gg.graph().vertex(gg.vertex_of(lt, x)).label.clone();
        pre.add_edge(s_level.coset_index(x), s_level.coset_index(group.mul(t, x)), Some(label))?;
    }
    let ig = incidence_graph(&pre);
    let vertex_map: Vec<usize> = (0..gg.vertex_count())
        .map(|v| {
            let (level, coset) = gg.vertex_info(v);
            let index = gg.levels()[level].coset_index(coset.rep);
            if level == ls {
                ig.vertex_node(index)
            } else {
                ig.edge_node(index)
            }
        })
        .collect();
    let index: HashMap<(usize, usize), usize> =
        ig.graph.edges().iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
    let mut edge_map = Vec::with_capacity(gg.edges().len());
    for e in gg.edges() {
        let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
        edge_map.push(
            *index
                .get(&(a.min(b), a.max(b)))
                .ok_or_else(|| IncidenceError::Assertion("adjacency differs from the incidence graph".into()))?,
        );
    }
    let iso = GraphMap {
        vertex_map,
        edge_map,
    };
    iso.verify(gg.graph(), &ig.graph).map_err(IncidenceError::Assertion)?;
    Ok((pre, iso))
}

/// A map `f` on `⟨s,t⟩` with the properties used by the incidence theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceWitnessMap {
    /// Elements of `⟨s,t⟩` (indices in the base group), ascending.
    pub domain: Vec<Elem>,
    /// `f[i]` is the image of `domain[i]`.
    pub f: Vec<Elem>,
    pub involutive: bool,
    pub fixes_identity: bool,
    pub homomorphism: bool,
}

impl IncidenceWitnessMap {
    fn new(group: &FiniteGroup, domain: Vec<Elem>, f: Vec<Elem>) -> Self {
        let pos = |x: Elem| domain.binary_search(&x).ok();
        let apply = |x: Elem| pos(x).map(|i| f[i]);
        let involutive = domain.iter().all(|&x| apply(x).and_then(apply) == Some(x));
        let fixes_identity = apply(group.identity()) == Some(group.identity());
        let homomorphism = domain.iter().all(|&a| {
            domain
                .iter()
                .all(|&b| apply(group.mul(a, b)) == apply(a).zip(apply(b)).map(|(x, y)| group.mul(x, y)))
        });
        IncidenceWitnessMap {
            domain,
            f,
            involutive,
            fixes_identity,
            homomorphism,
        }
    }

    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.domain.binary_search(&x).ok().map(|i| self.f[i])
    }

    /// `∀x: f(sx) ∈ ⟨t⟩f(x)` and `f(tx) ∈ ⟨s⟩f(x)`.
    pub fn displacement_holds(&self, group: &FiniteGroup, s: Elem, t: Elem) -> bool {
        let hs = group.cyclic_subgroup(s);
        let ht = group.cyclic_subgroup(t);
        self.domain.iter().all(|&x| {
            let fx_inv = group.inv(self.f[self.domain.binary_search(&x).expect("in domain")]);
            let ok = |g: Elem, h: &[Elem]| {
                self.apply(group.mul(g, x))
                    .is_some_and(|y| h.binary_search(&group.mul(y, fx_inv)).is_ok())
            };
            ok(s, &ht) && ok(t, &hs)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SufficientWitness {
    pub map: IncidenceWitnessMap,
    /// `f(s) = t^m`, `f(t) = s^n`.
    pub m: usize,
    pub n: usize,
}

/// Searches an involutive homomorphism `f` of `⟨s,t⟩` with `f(s) ∈ ⟨t⟩` and
/// `f(t) ∈ ⟨s⟩`, trying `(f(s), f(t)) = (t^m, s^n)` in `(m, n)` order.
/// `None` proves nothing.
pub fn sufficient_bipartite_test(
    group: &FiniteGroup,
    s: Elem,
    t: Elem,
) -> Result<Option<SufficientWitness>, IncidenceError> {
    group.check_element(s)?;
    group.check_element(t)?;
    let domain = group.generated_subgroup(&[s, t]);
    let pos = |x: Elem| domain.binary_search(&x).expect("element of the subgroup");
    let (os, ot) = (group.element_order(s), group.element_order(t));
    for m in 0..ot {
        for n in 0..os {
            let (fs, ft) = (group.pow(t, m as i64), group.pow(s, n as i64));
            // f(x·g) = f(x)·f(g), extended breadth-first from f(e) = e
            let mut f = vec![usize::MAX; domain.len()];
            f[pos(group.identity())] = group.identity();
            let mut queue = std::collections::VecDeque::from([group.identity()]);
            let mut consistent = true;
            'bfs: while let Some(x) = queue.pop_front() {
                let fx = f[pos(x)];
                for (g, fg) in [(s, fs), (t, ft)] {
                    let y = group.mul(x, g);
                    let fy = group.mul(fx, fg);
                    let slot = &mut f[pos(y)];
                    if *slot == usize::MAX {
                        *slot = fy;
                        queue.push_back(y);
                    } else if *slot != fy {
                        consistent = false;
                        break 'bfs;
                    }
                }
            }
            if !consistent {
                continue;
            }
            let map = IncidenceWitnessMap::new(group, domain.clone(), f);
            if map.homomorphism && map.involutive && map.fixes_identity {
                return Ok(Some(SufficientWitness { map, m, n }));
            }
        }
    }
    Ok(None)
}

/// Outcome of the necessary-condition search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NecessaryOutcome {
    /// An order-2 automorphism swapping the levels and fixing the edge
    /// labeled `e`, and the map `f` read off its edge labels.
    Witness {
        automorphism: GraphMap,
        map: IncidenceWitnessMap,
    },
    /// No such automorphism exists, so `IΓ` is not a G-graph.
    Obstruction { reason: String },
}

/// Searches an involution of `Φ(G,{s,t})` exchanging `V_s` and `V_t` and
/// sending `⟨s⟩e` to `⟨t⟩e`, with candidates in ascending vertex order.
pub fn necessary_bipartite_witness(gg: &GGraph, budget: u64) -> Result<NecessaryOutcome, IncidenceError> {
    level_pair(gg)?;
    let group = gg.group();
    let g = gg.graph();
    if !g.is_connected() {
        return Err(IncidenceError::Precondition("the G-graph must be connected".into()));
    }
    let vs: Vec<usize> = gg.level(0);
    let vt: Vec<usize> = gg.level(1);
    if vs.len() != vt.len() {
        return Ok(NecessaryOutcome::Obstruction {
            reason: format!("|V_s| = {} differs from |V_t| = {}", vs.len(), vt.len()),
        });
    }
    let k = vs.len();
    let mult: Vec<Vec<usize>> = vs
        .iter()
        .map(|&u| vt.iter().map(|&v| g.multiplicity(u, v)).collect())
        .collect();
    let mut row_profile: Vec<Vec<usize>> = mult.clone();
    row_profile.iter_mut().for_each(|r| r.sort_unstable());
    let mut col_profile: Vec<Vec<usize>> = (0..k).map(|j| (0..k).map(|i| mult[i][j]).collect()).collect();
    col_profile.iter_mut().for_each(|c| c.sort_unstable());

    let e = group.identity();
    let start_s = gg.vertex_of(0, e) - vs[0];
    let start_t = gg.vertex_of(1, e) - vt[0];

    // p[i] = j means τ(V_s[i]) = V_t[j] and τ(V_t[j]) = V_s[i]
    let mut p = vec![usize::MAX; k];
    let mut used = vec![false; k];
    p[start_s] = start_t;
    used[start_t] = true;
    let order: Vec<usize> = std::iter::once(start_s).chain((0..k).filter(|&i| i != start_s)).collect();
    let mut nodes = 0u64;

    fn compatible(mult: &[Vec<usize>], p: &[usize], i: usize, j: usize) -> bool {
        p.iter()
            .enumerate()
            .filter(|&(_, &pj)| pj != usize::MAX)
            .all(|(i2, &j2)| mult[i][j2] == mult[i2][j])
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        depth: usize,
        order: &[usize],
        mult: &[Vec<usize>],
        rows: &[Vec<usize>],
        cols: &[Vec<usize>],
        p: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool, IncidenceError> {
        if depth == order.len() {
            return Ok(true);
        }
        let i = order[depth];
        for j in 0..p.len() {
            if used[j] || rows[i] != cols[j] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(IncidenceError::CapExceeded { budget });
            }
            if !compatible(mult, p, i, j) {
                continue;
            }
            p[i] = j;
            used[j] = true;
            if search(depth + 1, order, mult, rows, cols, p, used, nodes, budget)? {
                return Ok(true);
            }
            p[i] = usize::MAX;
            used[j] = false;
        }
        Ok(false)
    }

    let start_ok = row_profile[start_s] == col_profile[start_t];
    let found = start_ok
        && search(1, &order, &mult, &row_profile, &col_profile, &mut p, &mut used, &mut nodes, budget)?;
    if !found {
        return Ok(NecessaryOutcome::Obstruction {
            reason: "no involution exchanges the levels while fixing the edge labeled e".into(),
        });
    }

    let mut vertex_map = vec![0; g.vertex_count()];
    for (i, &j) in p.iter().enumerate() {
        vertex_map[vs[i]] = vt[j];
        vertex_map[vt[j]] = vs[i];
    }
    let mut edge_map: Vec<usize> = (0..g.edge_count()).collect();
    for &u in &vs {
        for &v in &vt {
            // τ sends the multi-edge uv to τ(v)τ(u); visit each swapped pair once
            let (fu, fv) = (vertex_map[v], vertex_map[u]);
            if (u, v) >= (fu, fv) {
                continue;
            }
            for (&x, &y) in g.edges_between(u, v).iter().zip(g.edges_between(fu, fv).iter()) {
                edge_map[x] = y;
                edge_map[y] = x;
            }
        }
    }
    let automorphism = GraphMap {
        vertex_map,
        edge_map,
    };
    automorphism
        .verify_automorphism(g)
        .map_err(IncidenceError::Assertion)?;
    let mut label_edge = vec![usize::MAX; group.order()];
    for (i, ed) in gg.edges().iter().enumerate() {
        label_edge[ed.label] = i;
    }
    let domain: Vec<Elem> = group.elements().collect();
    let f: Vec<Elem> = domain
        .iter()
        .map(|&x| gg.edges()[automorphism.edge_map[label_edge[x]]].label)
        .collect();
    let map = IncidenceWitnessMap::new(group, domain, f);
    let (s, t) = (gg.levels()[0].gen, gg.levels()[1].gen);
    if !map.involutive || !map.fixes_identity || !map.displacement_holds(group, s, t) {
        return Err(IncidenceError::Assertion("map read off the involution violates the theorem".into()));
    }
    Ok(NecessaryOutcome::Witness { automorphism, map })
}

/// For a sufficient witness, builds `IΦ(⟨s,t⟩,{s,t})`, `H = ⟨τ̃, δ̃_s⟩` and
/// `C = {edge e, ⟨s⟩e}`, and runs the loop-free recognition check.
pub fn sufficient_recognition_check(
    group: &FiniteGroup,
    s: Elem,
    t: Elem,
    w: &SufficientWitness,
) -> Result<RecognitionReport, IncidenceError> {
    let (sub, emb) = group.subgroup(&w.map.domain)?;
    let local = |x: Elem| emb.binary_search(&x).expect("in subgroup");
    let gg = build_phi(&sub, &GenMultiset::new(&sub, &[local(s), local(t)])?);
    let f_local: Vec<Elem> = emb.iter().map(|&x| local(w.map.apply(x).expect("in domain"))).collect();
    let g = gg.graph();
    let mut label_edge = vec![0; sub.order()];
    for (i, ed) in gg.edges().iter().enumerate() {
        label_edge[ed.label] = i;
    }
    let mut vertex_map = vec![usize::MAX; g.vertex_count()];
    for x in sub.elements() {
        vertex_map[gg.vertex_of(0, x)] = gg.vertex_of(1, f_local[x]);
        vertex_map[gg.vertex_of(1, x)] = gg.vertex_of(0, f_local[x]);
    }
    let edge_map: Vec<usize> = gg.edges().iter().map(|ed| label_edge[f_local[ed.label]]).collect();
    let tau = GraphMap {
        vertex_map,
        edge_map,
    };
    tau.verify_automorphism(g).map_err(IncidenceError::Assertion)?;
    let delta_s = gg.shift(local(s)).map;
    let ig = incidence_graph(g);
    let gens = vec![lift_automorphism(g, &ig, &tau)?, lift_automorphism(g, &ig, &delta_s)?];
    let c = vec![ig.edge_node(label_edge[sub.identity()]), ig.vertex_node(gg.vertex_of(0, sub.identity()))];
    let witness = RecognitionWitness::from_generators(&ig.graph, &gens, c, crate::algebra::DEFAULT_CLOSURE_CAP)?;
    Ok(check_simple(&ig.graph, &witness)?)
}
