//! JSON and DOT encodings.
//!
//! ```json
//! {"vertices":[{"id":0,"label":"a","part":null}],
//!  "edges":[{"id":0,"u":0,"v":0,"label":null}]}
//! ```
//!
//! G-graph documents add `"levels"` and a per-edge `"glabel"`; both are
//! optional and ignored by [`import_json`] beyond validation of their shape.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{GraphError, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: i64,
    pub label: String,
    #[serde(default)]
    pub part: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: i64,
    pub u: i64,
    pub v: i64,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glabel: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub gen: String,
    pub occurrence: usize,
    pub cosets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LevelJson>>,
}

impl GraphJson {
    pub fn from_graph(g: &Multigraph) -> Self {
        GraphJson {
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| VertexJson {
                    id: i as i64,
                    label: v.label.clone(),
                    part: v.part,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeJson {
                    id: i as i64,
                    u: e.u as i64,
                    v: e.v as i64,
                    label: e.label.clone(),
                    glabel: None,
                })
                .collect(),
            levels: None,
        }
    }

    /// Builds the graph, renumbering vertex ids densely in document order.
    pub fn to_graph(&self) -> Result<Multigraph, GraphError> {
        let mut ids = HashMap::with_capacity(self.vertices.len());
        let mut g = Multigraph::new();
        for v in &self.vertices {
            let dense = g.add_vertex(v.label.clone(), v.part);
            if ids.insert(v.id, dense).is_some() {
                return Err(GraphError::Json(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut edge_ids = HashMap::with_capacity(self.edges.len());
        for e in &self.edges {
            if edge_ids.insert(e.id, ()).is_some() {
                return Err(GraphError::Json(format!("duplicate edge id {}", e.id)));
            }
            let lookup = |x: i64| {
                ids.get(&x)
                    .copied()
                    .ok_or_else(|| GraphError::Json(format!("edge {} refers to unknown vertex {x}", e.id)))
            };
            g.add_edge(lookup(e.u)?, lookup(e.v)?, e.label.clone())?;
        }
        Ok(g)
    }
}

pub fn export_json(g: &Multigraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph json serializes")
}

pub fn import_json(text: &str) -> Result<Multigraph, GraphError> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    doc.to_graph()
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `graph { ... }` with one line per vertex and one per edge; parallel
/// edges are repeated and loops appear as `v -- v`.
pub fn export_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph {\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let _ = writeln!(out, "  {i} [label=\"{}\"];", escape(&v.label));
    }
    for e in g.edges() {
        match &e.label {
            Some(l) => {
                let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, escape(l));
            }
            None => {
                let _ = writeln!(out, "  {} -- {};", e.u, e.v);
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_multiplicities() {
        let mut g = Multigraph::complete_bipartite(2, 3, 2);
        g.add_edge(0, 0, Some("loop".into())).unwrap();
        let back = import_json(&export_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn sparse_ids_are_renumbered() {
        let text = r#"{"vertices":[{"id":10,"label":"a","part":null},{"id":-3,"label":"b"}],
                      "edges":[{"id":7,"u":10,"v":-3,"label":"x"}]}"#;
        let g = import_json(text).unwrap();
        assert_eq!(g.edge(0).key(), (0, 1));
        assert_eq!(g.edge(0).label.as_deref(), Some("x"));
    }

    #[test]
    fn bad_documents() {
        assert!(import_json("{").is_err());
        assert!(import_json(r#"{"vertices":[],"edges":[{"id":0,"u":0,"v":1}]}"#).is_err());
        assert!(import_json(r#"{"vertices":[{"id":0,"label":""},{"id":0,"label":""}],"edges":[]}"#).is_err());
    }

    #[test]
    fn dot_shows_loops_and_labels() {
        let mut g = Multigraph::with_vertices(2);
        g.add_edge(1, 1, None).unwrap();
        g.add_edge(0, 1, Some("g\"1".into())).unwrap();
        let dot = export_dot(&g);
        assert!(dot.contains("  1 -- 1;"));
        assert!(dot.contains("  0 -- 1 [label=\"g\\\"1\"];"));
        assert!(dot.starts_with("graph {"));
    }
}
