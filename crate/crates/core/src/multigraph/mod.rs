//! Undirected labeled multigraphs with loops.
//!
//! Parallel edges are stored individually so every edge can carry its own
//! label. Vertex and edge ids are dense: vertex `i` has id `i`, edge `j` has
//! id `j`.

mod io;
mod iso;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

pub use io::{export_dot, export_json, import_json, EdgeJson, GraphJson, LevelJson, VertexJson};
pub use iso::{automorphisms, isomorphic, GraphMap, IsoOptions, DEFAULT_ISO_CAP};

/// Alias kept for the isomorphism-witness role of [`GraphMap`].
pub type IsoWitness = GraphMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("combined vertex count {size} exceeds the cap of {cap}")]
    CapExceeded { cap: usize, size: usize },
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("invalid graph json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub part: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: Option<String>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoints as an ordered pair `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

/// Parts `(m, n)` with `m ≤ n` and the common multiplicity `l` of a complete
/// bipartite multigraph `K^l_{m,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompleteBipartite {
    pub m: usize,
    pub n: usize,
    pub l: usize,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(i.to_string(), None);
        }
        g
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, part: Option<u32>) -> usize {
        self.vertices.push(Vertex {
            label: label.into(),
            part,
        });
        self.incident.push(Vec::new());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: Option<String>) -> Result<usize, GraphError> {
        for x in [u, v] {
            if x >= self.vertices.len() {
                return Err(GraphError::InvalidVertex(x));
            }
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, label });
        self.incident[u].push(id);
        if u != v {
            self.incident[v].push(id);
        }
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn set_edge_label(&mut self, e: usize, label: Option<String>) {
        self.edges[e].label = label;
    }

    pub fn set_part(&mut self, v: usize, part: Option<u32>) {
        self.vertices[v].part = part;
    }

    /// Removes edge `e`; later edge ids shift down by one.
    pub fn remove_edge(&mut self, e: usize) {
        self.edges.remove(e);
        self.rebuild_incidence();
    }

    fn rebuild_incidence(&mut self) {
        self.incident = vec![Vec::new(); self.vertices.len()];
        for (id, e) in self.edges.iter().enumerate() {
            self.incident[e.u].push(id);
            if e.u != e.v {
                self.incident[e.v].push(id);
            }
        }
    }

    /// Edge ids incident to `v`; a loop is listed once.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Incident edge count with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.incident[v].iter().filter(|&&e| self.edges[e].is_loop()).count()
    }

    /// Neighbor → number of parallel edges (loops excluded).
    pub fn neighbor_multiplicities(&self, v: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &e in &self.incident[v] {
            let edge = &self.edges[e];
            if !edge.is_loop() {
                *out.entry(edge.other(v)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Edges joining `u` and `v` (loops at `u` when `u == v`).
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.incident[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].key() == (u.min(v), u.max(v)))
            .collect()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges_between(u, v).len()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let mut keys: Vec<_> = self.edges.iter().map(Edge::key).collect();
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &e in &self.incident[x] {
                    let y = self.edges[e].other(x);
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// A proper 2-colouring (`false`/`true` per vertex), or `None`.
    /// Each component's least vertex gets `false`.
    pub fn is_bipartite(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].expect("colored");
                for &e in &self.incident[x] {
                    let y = self.edges[e].other(x);
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("colored")).collect())
    }

    /// `Some` iff the graph is loop-free, bipartite with nonempty parts,
    /// every cross pair is adjacent and all multi-edges share one multiplicity.
    pub fn is_complete_bipartite_multi(&self) -> Option<CompleteBipartite> {
        if self.vertex_count() < 2 || self.has_loops() || !self.is_connected() {
            return None;
        }
        let coloring = self.is_bipartite()?;
        let a: Vec<usize> = (0..self.vertex_count()).filter(|&v| !coloring[v]).collect();
        let b: Vec<usize> = (0..self.vertex_count()).filter(|&v| coloring[v]).collect();
        if a.is_empty() || b.is_empty() {
            return None;
        }
        let l = self.multiplicity(a[0], b[0]);
        if l == 0 {
            return None;
        }
        for &x in &a {
            let mults = self.neighbor_multiplicities(x);
            if mults.len() != b.len() || mults.values().any(|&k| k != l) {
                return None;
            }
        }
        Some(CompleteBipartite {
            m: a.len().min(b.len()),
            n: a.len().max(b.len()),
            l,
        })
    }

    /// `Γ[X]`: the vertices of `X` (renumbered in ascending order) and every
    /// edge with both endpoints in `X`. Also returns the old id of each new vertex.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<(Multigraph, Vec<usize>), GraphError> {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        let mut g = Multigraph::new();
        for &v in &keep {
            if v >= self.vertex_count() {
                return Err(GraphError::InvalidVertex(v));
            }
            let vx = &self.vertices[v];
            new_id[v] = g.add_vertex(vx.label.clone(), vx.part);
        }
        for e in &self.edges {
            if new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX {
                g.add_edge(new_id[e.u], new_id[e.v], e.label.clone())?;
            }
        }
        Ok((g, keep))
    }

    /// Simple cycle `C_n` on vertices `0..n` (`n ≥ 3`).
    pub fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::with_vertices(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, None).expect("valid");
        }
        g
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::with_vertices(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j, None).expect("valid");
            }
        }
        g
    }

    /// `K^l_{m,n}` with the `m`-part first (part tag 0) and the `n`-part second (tag 1).
    pub fn complete_bipartite(m: usize, n: usize, l: usize) -> Multigraph {
        let mut g = Multigraph::new();
        for i in 0..m + n {
            g.add_vertex(i.to_string(), Some(u32::from(i >= m)));
        }
        for i in 0..m {
            for j in 0..n {
                for _ in 0..l {
                    g.add_edge(i, m + j, None).expect("valid");
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = self.clone();
        let off = g.vertex_count();
        for v in &other.vertices {
            g.add_vertex(v.label.clone(), v.part);
        }
        for e in &other.edges {
            g.add_edge(e.u + off, e.v + off, e.label.clone()).expect("valid");
        }
        g
    }
}
