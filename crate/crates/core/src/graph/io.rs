//! Graph serialization: JSON `{"vertices":[..],"edges":[[a,b],..]}` and
//! edge lists with one `src dst` pair per line. An edge-list line holding a
//! single name declares an isolated vertex; `#` starts a comment.

use serde::{Deserialize, Serialize};

use super::DirectedGraph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

pub fn parse_json(text: &str) -> Result<DirectedGraph> {
    let raw: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    DirectedGraph::new(&raw.vertices, &raw.edges)
}

pub fn parse_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        for t in &tokens {
            if seen.insert(t.to_string()) {
                vertices.push(t.to_string());
            }
        }
        match tokens.len() {
            0 | 1 => {}
            2 => edges.push((tokens[0].to_string(), tokens[1].to_string())),
            n => {
                return Err(Error::Parse { line: k + 1, message: format!("expected `src dst`, found {n} tokens") });
            }
        }
    }
    DirectedGraph::new(&vertices, &edges)
}

impl DirectedGraph {
    pub fn to_json(&self) -> String {
        let raw = GraphJson { vertices: self.names().to_vec(), edges: self.edge_names() };
        serde_json::to_string(&raw).expect("graph JSON is serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "vertices": self.names(), "edges": self.edge_names() })
    }

    /// Edge list in edge order; vertices without edges follow as single names.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut touched = vec![false; self.num_vertices()];
        for &(a, b) in self.edges() {
            touched[a] = true;
            touched[b] = true;
            out.push_str(self.name(a));
            out.push(' ');
            out.push_str(self.name(b));
            out.push('\n');
        }
        for (v, t) in touched.iter().enumerate() {
            if !t {
                out.push_str(self.name(v));
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gamma;

    #[test]
    fn parse_examples() {
        let g = parse_json(r#"{"vertices":[],"edges":[]}"#).unwrap();
        assert_eq!(g.num_vertices(), 0);
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 2));
        assert_eq!(parse_edge_list("a a"), Err(Error::LoopEdge("a".into())));
        assert!(matches!(parse_edge_list("a b\na b c\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_json("{\"vertices\":"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trips() {
        let g = gamma(3);
        let json = g.to_json();
        assert_eq!(parse_json(&json).unwrap().to_json(), json);
        let text = "a b\nb c\nz\n";
        assert_eq!(parse_edge_list(text).unwrap().to_edge_list(), text);
    }
}
