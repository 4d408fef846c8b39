//! G-graphs `Φ(G,S)` and `Ψ(G,S)`.
//!
//! Every occurrence of a generator in `S` is its own level; the vertices of
//! a level are the right cosets `⟨s⟩x`, ordered by least element. Between
//! two distinct levels there is one edge labeled `g` for every `g ∈ G`,
//! joining the two cosets that contain `g`. `Ψ` adds one loop labeled `g`
//! on the coset containing `g`, for every level and every `g`.
//!
//! Edge ids follow the bijection with `G × P₂(S)`: level pairs `i < j` in
//! lexicographic order, `|G|` consecutive ids per pair indexed by label,
//! then (for `Ψ`) `|G|` loops per level.

mod components;
mod kmn;
mod structure;

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, Coset, Elem, FiniteGroup, GenMultiset};
use crate::multigraph::{GraphError, GraphJson, GraphMap, LevelJson, Multigraph};

pub use components::{
    component_analysis, pairwise_product_closed, replicate_components, ComponentInfo, ComponentReport,
    PairwiseProduct,
};
pub use kmn::{kmn_build, kmn_plan, KmnPlan};
pub use structure::{verify_structure, CheckItem, StructureReport};

#[derive(Debug, Error)]
pub enum GGraphError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A construction guaranteed to succeed did not; this is a bug.
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

#[derive(Debug, Clone)]
pub struct Level {
    pub gen: Elem,
    pub occurrence: usize,
    pub cosets: Vec<Coset>,
    coset_of: Vec<usize>,
    offset: usize,
}

impl Level {
    /// Index (within the level) of the coset containing `x`.
    pub fn coset_index(&self, x: Elem) -> usize {
        self.coset_of[x]
    }

    /// Vertex ids of this level.
    pub fn vertex_range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.cosets.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GEdge {
    pub u: usize,
    pub v: usize,
    pub label: Elem,
}

#[derive(Debug, Clone)]
pub struct GGraph {
    group: FiniteGroup,
    gens: GenMultiset,
    levels: Vec<Level>,
    /// `(level, coset index)` per vertex id.
    vertices: Vec<(usize, usize)>,
    edges: Vec<GEdge>,
    with_loops: bool,
    graph: Multigraph,
}

/// A shift `δ_g`: `⟨s⟩x ↦ ⟨s⟩xg` on vertices, label `h ↦ hg` on edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub element: Elem,
    pub map: GraphMap,
}

pub fn build_phi(group: &FiniteGroup, gens: &GenMultiset) -> GGraph {
    GGraph::build(group, gens, false)
}

pub fn build_psi(group: &FiniteGroup, gens: &GenMultiset) -> GGraph {
    GGraph::build(group, gens, true)
}

impl GGraph {
    fn build(group: &FiniteGroup, gens: &GenMultiset, with_loops: bool) -> GGraph {
        let mut levels = Vec::with_capacity(gens.len());
        let mut vertices = Vec::new();
        let mut graph = Multigraph::new();
        for (li, &(s, occ)) in gens.items().iter().enumerate() {
            let (cosets, coset_of) = group.right_cosets(s);
            let offset = vertices.len();
            let gen_name = group.format_element(s);
            for (ci, c) in cosets.iter().enumerate() {
                vertices.push((li, ci));
                let label = if occ == 0 {
                    format!("<{gen_name}>{}", group.format_element(c.rep))
                } else {
                    format!("<{gen_name}#{occ}>{}", group.format_element(c.rep))
                };
                graph.add_vertex(label, Some(li as u32));
            }
            levels.push(Level {
                gen: s,
                occurrence: occ,
                cosets,
                coset_of,
                offset,
            });
        }
        let mut edges = Vec::new();
        let mut push = |graph: &mut Multigraph, u: usize, v: usize, x: Elem| {
            graph
                .add_edge(u, v, Some(group.format_element(x)))
                .expect("vertex ids are valid");
            edges.push(GEdge { u, v, label: x });
        };
        for i in 0..levels.len() {
            for j in i + 1..levels.len() {
                for x in group.elements() {
                    let u = levels[i].offset + levels[i].coset_of[x];
                    let v = levels[j].offset + levels[j].coset_of[x];
                    push(&mut graph, u, v, x);
                }
            }
        }
        if with_loops {
            for level in &levels {
                for x in group.elements() {
                    let u = level.offset + level.coset_of[x];
                    push(&mut graph, u, u, x);
                }
            }
        }
        GGraph {
            group: group.clone(),
            gens: gens.clone(),
            levels,
            vertices,
            edges,
            with_loops,
            graph,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gens(&self) -> &GenMultiset {
        &self.gens
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn has_loops(&self) -> bool {
        self.with_loops
    }

    /// The underlying labeled multigraph.
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn edges(&self) -> &[GEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `(level, coset)` of a vertex id.
    pub fn vertex_info(&self, v: usize) -> (usize, &Coset) {
        let (l, c) = self.vertices[v];
        (l, &self.levels[l].cosets[c])
    }

    pub fn vertex_of(&self, level: usize, x: Elem) -> usize {
        let l = &self.levels[level];
        l.offset + l.coset_of[x]
    }

    /// Vertex ids of the level of one occurrence.
    pub fn level(&self, occurrence: usize) -> Vec<usize> {
        self.levels[occurrence].vertex_range().collect()
    }

    /// `C_g`: the vertex of each level that contains `g`.
    pub fn colour_clique(&self, g: Elem) -> Vec<usize> {
        (0..self.levels.len()).map(|l| self.vertex_of(l, g)).collect()
    }

    /// Overwrites the group label of one edge (both the element and the
    /// multigraph's display label). Used to build corrupted negative controls.
    pub fn set_edge_label(&mut self, e: usize, label: Elem) {
        self.edges[e].label = label;
        let text = self.group.format_element(label);
        self.graph.set_edge_label(e, Some(text));
    }

    /// Index of edge with the given endpoints and label, if present.
    fn edge_index(&self) -> HashMap<(usize, usize, Elem), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.u.min(e.v), e.u.max(e.v), e.label), i))
            .collect()
    }

    /// `δ_g` computed from the current edge labels. `None` when some edge has
    /// no image, i.e. the labels do not support the shift.
    pub fn try_shift(&self, g: Elem) -> Option<Shift> {
        self.shift_with_index(g, &self.edge_index())
    }

    fn shift_with_index(&self, g: Elem, index: &HashMap<(usize, usize, Elem), usize>) -> Option<Shift> {
        let vertex_map: Vec<usize> = self
            .vertices
            .iter()
            .map(|&(l, c)| {
                let rep = self.levels[l].cosets[c].rep;
                self.vertex_of(l, self.group.mul(rep, g))
            })
            .collect();
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let (fu, fv) = (vertex_map[e.u], vertex_map[e.v]);
            let key = (fu.min(fv), fu.max(fv), self.group.mul(e.label, g));
            edge_map.push(*index.get(&key)?);
        }
        Some(Shift {
            element: g,
            map: GraphMap {
                vertex_map,
                edge_map,
            },
        })
    }

    /// `δ_g`. Panics if the edge labels were corrupted so that no shift exists.
    pub fn shift(&self, g: Elem) -> Shift {
        self.try_shift(g).expect("labels of a constructed G-graph support every shift")
    }

    /// All shifts in element order.
    pub fn shifts(&self) -> Option<Vec<Shift>> {
        let index = self.edge_index();
        self.group
            .elements()
            .map(|g| self.shift_with_index(g, &index))
            .collect()
    }

    /// JSON document: multigraph fields plus `levels` and per-edge `glabel`.
    pub fn to_json(&self) -> GraphJson {
        let mut doc = GraphJson::from_graph(&self.graph);
        for (e, ej) in self.edges.iter().zip(doc.edges.iter_mut()) {
            ej.glabel = Some(e.label);
        }
        doc.levels = Some(
            self.levels
                .iter()
                .map(|l| LevelJson {
                    gen: self.group.format_element(l.gen),
                    occurrence: l.occurrence,
                    cosets: l.cosets.iter().map(|c| c.elements.clone()).collect(),
                })
                .collect(),
        );
        doc
    }
}
