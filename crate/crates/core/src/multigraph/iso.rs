//! Backtracking isomorphism search for desk-scale multigraphs.
//!
//! Vertices are first split into classes by colour refinement seeded with
//! `(part tag, degree, loop count, multiset of incident multiplicities)`;
//! the search then maps vertices of the first graph in a connectivity-first
//! order, trying candidates of the same class in ascending id order.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{GraphError, Multigraph};

/// Default cap on the combined vertex count of an isomorphism query.
pub const DEFAULT_ISO_CAP: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoOptions {
    /// Require equal edge-label multisets on every multi-edge.
    pub match_edge_labels: bool,
    /// Require vertices to keep their part tag.
    pub match_parts: bool,
    pub cap: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            match_edge_labels: false,
            match_parts: false,
            cap: DEFAULT_ISO_CAP,
        }
    }
}

impl IsoOptions {
    pub fn strict() -> Self {
        IsoOptions {
            match_edge_labels: true,
            ..Self::default()
        }
    }
}

/// A pair `(f, f#)` of vertex and edge maps between two multigraphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphMap {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

impl GraphMap {
    pub fn identity(g: &Multigraph) -> Self {
        GraphMap {
            vertex_map: (0..g.vertex_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.edge_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        GraphMap {
            vertex_map: other.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: other.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
        }
    }

    pub fn inverse(&self) -> GraphMap {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (x, &y) in self.vertex_map.iter().enumerate() {
            vertex_map[y] = x;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        for (x, &y) in self.edge_map.iter().enumerate() {
            edge_map[y] = x;
        }
        GraphMap {
            vertex_map,
            edge_map,
        }
    }

    /// Checks that both maps are bijections and that every edge `a` with
    /// endpoints `{u, v}` goes to an edge with endpoints `{f(u), f(v)}`.
    pub fn verify(&self, g1: &Multigraph, g2: &Multigraph) -> Result<(), String> {
        if !is_bijection(&self.vertex_map, g2.vertex_count()) || g1.vertex_count() != g2.vertex_count() {
            return Err("vertex map is not a bijection".into());
        }
        if !is_bijection(&self.edge_map, g2.edge_count()) || g1.edge_count() != g2.edge_count() {
            return Err("edge map is not a bijection".into());
        }
        for (a, e) in g1.edges().iter().enumerate() {
            let (fu, fv) = (self.vertex_map[e.u], self.vertex_map[e.v]);
            let image = g2.edge(self.edge_map[a]);
            if image.key() != (fu.min(fv), fu.max(fv)) {
                return Err(format!(
                    "edge {a} = {{{}, {}}} maps to edge {} = {{{}, {}}}, expected {{{fu}, {fv}}}",
                    e.u,
                    e.v,
                    self.edge_map[a],
                    image.u,
                    image.v
                ));
            }
        }
        Ok(())
    }

    pub fn verify_automorphism(&self, g: &Multigraph) -> Result<(), String> {
        self.verify(g, g)
    }
}

type Adj = Vec<Vec<(usize, usize)>>;

struct Prepared<'a> {
    g: &'a Multigraph,
    adj: Adj,
    loops: Vec<usize>,
    labels: HashMap<(usize, usize), Vec<Option<String>>>,
}

impl<'a> Prepared<'a> {
    fn new(g: &'a Multigraph, with_labels: bool) -> Self {
        let adj = (0..g.vertex_count())
            .map(|v| g.neighbor_multiplicities(v).into_iter().collect())
            .collect();
        let loops = (0..g.vertex_count()).map(|v| g.loop_count(v)).collect();
        let mut labels: HashMap<(usize, usize), Vec<Option<String>>> = HashMap::new();
        if with_labels {
            for e in g.edges() {
                labels.entry(e.key()).or_default().push(e.label.clone());
            }
            for l in labels.values_mut() {
                l.sort();
            }
        }
        Prepared {
            g,
            adj,
            loops,
            labels,
        }
    }

    fn mult(&self, u: usize, v: usize) -> usize {
        match self.adj[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(i) => self.adj[u][i].1,
            Err(_) => 0,
        }
    }

    fn pair_labels(&self, u: usize, v: usize) -> Option<&Vec<Option<String>>> {
        self.labels.get(&(u.min(v), u.max(v)))
    }
}

/// Joint colour refinement over both graphs so class ids are comparable.
fn refine(p1: &Prepared<'_>, p2: &Prepared<'_>, opts: &IsoOptions) -> (Vec<usize>, Vec<usize>) {
    let initial = |p: &Prepared<'_>, v: usize| {
        let mut mults: Vec<usize> = p.adj[v].iter().map(|&(_, m)| m).collect();
        mults.sort_unstable();
        let part = if opts.match_parts { p.g.vertex(v).part } else { None };
        let loop_labels = if opts.match_edge_labels {
            p.pair_labels(v, v).cloned().unwrap_or_default()
        } else {
            Vec::new()
        };
        (part, p.g.degree(v), p.loops[v], mults, loop_labels)
    };
    let n1 = p1.g.vertex_count();
    let mut ids = BTreeMap::new();
    let keys: Vec<_> = (0..n1)
        .map(|v| initial(p1, v))
        .chain((0..p2.g.vertex_count()).map(|v| initial(p2, v)))
        .collect();
    for k in &keys {
        let len = ids.len();
        ids.entry(k.clone()).or_insert(len);
    }
    let mut colors: Vec<usize> = keys.iter().map(|k| ids[k]).collect();
    let mut count = ids.len();
    loop {
        let mut sigs = BTreeMap::new();
        let signature = |p: &Prepared<'_>, v: usize, off: usize, colors: &[usize]| {
            let mut nb: Vec<(usize, usize)> = p.adj[v].iter().map(|&(u, m)| (colors[u + off], m)).collect();
            nb.sort_unstable();
            (colors[v + off], nb)
        };
        let all: Vec<_> = (0..n1)
            .map(|v| signature(p1, v, 0, &colors))
            .chain((0..p2.g.vertex_count()).map(|v| signature(p2, v, n1, &colors)))
            .collect();
        for s in &all {
            let len = sigs.len();
            sigs.entry(s.clone()).or_insert(len);
        }
        let next: Vec<usize> = all.iter().map(|s| sigs[s]).collect();
        let new_count = sigs.len();
        colors = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let c2 = colors.split_off(n1);
    (colors, c2)
}

struct Search<'a, 'b> {
    p1: &'a Prepared<'b>,
    p2: &'a Prepared<'b>,
    c1: Vec<usize>,
    c2: Vec<usize>,
    order: Vec<usize>,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    by_color: HashMap<usize, Vec<usize>>,
    labels: bool,
}

const UNSET: usize = usize::MAX;

impl Search<'_, '_> {
    fn feasible(&self, v: usize, w: usize) -> bool {
        if self.c1[v] != self.c2[w] || self.bwd[w] != UNSET {
            return false;
        }
        let mut mapped = 0;
        for &(u, m) in &self.p1.adj[v] {
            let fu = self.fwd[u];
            if fu == UNSET {
                continue;
            }
            mapped += 1;
            if self.p2.mult(w, fu) != m {
                return false;
            }
            if self.labels && self.p1.pair_labels(v, u) != self.p2.pair_labels(w, fu) {
                return false;
            }
        }
        let mapped2 = self.p2.adj[w].iter().filter(|&&(x, _)| self.bwd[x] != UNSET).count();
        mapped == mapped2
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if depth == self.order.len() {
            return visit(&self.fwd);
        }
        let v = self.order[depth];
        let candidates = self.by_color.get(&self.c1[v]).cloned().unwrap_or_default();
        for w in candidates {
            if !self.feasible(v, w) {
                continue;
            }
            self.fwd[v] = w;
            self.bwd[w] = v;
            let r = self.run(depth + 1, visit);
            self.fwd[v] = UNSET;
            self.bwd[w] = UNSET;
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Connectivity-first order: start from the smallest class, then always take
/// the vertex with most already-ordered neighbours (ties: smaller class, lower id).
fn search_order(p: &Prepared<'_>, colors: &[usize]) -> Vec<usize> {
    let n = colors.len();
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in colors {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(weight[v]), class_size[&colors[v]], v))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for &(u, _) in &p.adj[v] {
            weight[u] += 1;
        }
    }
    order
}

fn edge_map_for(p1: &Prepared<'_>, p2: &Prepared<'_>, vmap: &[usize], labels: bool) -> Vec<usize> {
    let g1 = p1.g;
    let g2 = p2.g;
    let mut groups1: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (id, e) in g1.edges().iter().enumerate() {
        groups1.entry(e.key()).or_default().push(id);
    }
    let mut edge_map = vec![0; g1.edge_count()];
    for ((u, v), mut ids1) in groups1 {
        let mut ids2 = g2.edges_between(vmap[u], vmap[v]);
        if labels {
            ids1.sort_by(|&a, &b| (&g1.edge(a).label, a).cmp(&(&g1.edge(b).label, b)));
            ids2.sort_by(|&a, &b| (&g2.edge(a).label, a).cmp(&(&g2.edge(b).label, b)));
        } else {
            ids2.sort_unstable();
        }
        for (a, b) in ids1.into_iter().zip(ids2) {
            edge_map[a] = b;
        }
    }
    edge_map
}

fn search_all(
    g1: &Multigraph,
    g2: &Multigraph,
    opts: &IsoOptions,
    visit: &mut dyn FnMut(GraphMap) -> ControlFlow<()>,
) -> Result<(), GraphError> {
    let size = g1.vertex_count() + g2.vertex_count();
    if size > opts.cap {
        return Err(GraphError::CapExceeded { cap: opts.cap, size });
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(());
    }
    let p1 = Prepared::new(g1, opts.match_edge_labels);
    let p2 = Prepared::new(g2, opts.match_edge_labels);
    let (c1, c2) = refine(&p1, &p2, opts);
    let mut s1 = c1.clone();
    let mut s2 = c2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(());
    }
    let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
    for (w, &c) in c2.iter().enumerate() {
        by_color.entry(c).or_default().push(w);
    }
    let n = g1.vertex_count();
    let order = search_order(&p1, &c1);
    let mut search = Search {
        p1: &p1,
        p2: &p2,
        c1,
        c2,
        order,
        fwd: vec![UNSET; n],
        bwd: vec![UNSET; n],
        by_color,
        labels: opts.match_edge_labels,
    };
    let _ = search.run(0, &mut |vmap| {
        let edge_map = edge_map_for(&p1, &p2, vmap, opts.match_edge_labels);
        visit(GraphMap {
            vertex_map: vmap.to_vec(),
            edge_map,
        })
    });
    Ok(())
}

/// An isomorphism `g1 → g2`, verified before it is returned, or `None`.
pub fn isomorphic(g1: &Multigraph, g2: &Multigraph, opts: &IsoOptions) -> Result<Option<GraphMap>, GraphError> {
    let mut found = None;
    search_all(g1, g2, opts, &mut |m| {
        found = Some(m);
        ControlFlow::Break(())
    })?;
    if let Some(m) = &found {
        if let Err(e) = m.verify(g1, g2) {
            panic!("isomorphism search produced an invalid witness: {e}");
        }
    }
    Ok(found)
}

/// Automorphisms of `g` up to `limit`, one per vertex permutation. Parallel
/// edges are matched in id order, so for multigraphs this is a subset of
/// `Aut(g)`; for simple graphs it is all of it.
pub fn automorphisms(g: &Multigraph, opts: &IsoOptions, limit: usize) -> Result<Vec<GraphMap>, GraphError> {
    let mut out = Vec::new();
    search_all(g, g, opts, &mut |m| {
        out.push(m);
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}
