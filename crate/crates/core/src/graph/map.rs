use super::{DirectedGraph, Vertex};
use crate::error::{Error, Result};

/// A vertex map sending every edge to an edge or collapsing it to a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    source: DirectedGraph,
    target: DirectedGraph,
    assignment: Vec<Vertex>,
}

/// The first edge of the source whose image is neither an edge nor a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapViolation {
    pub edge: (String, String),
    pub image: (String, String),
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "edge {}->{} maps to non-edge {}->{}", self.edge.0, self.edge.1, self.image.0, self.image.1)
    }
}

pub fn check_map(
    source: &DirectedGraph,
    target: &DirectedGraph,
    assignment: &[Vertex],
) -> std::result::Result<GraphMap, MapViolation> {
    assert_eq!(assignment.len(), source.num_vertices(), "assignment must be total");
    for &(a, b) in source.edges() {
        let (fa, fb) = (assignment[a], assignment[b]);
        if fa != fb && !target.has_edge(fa, fb) {
            return Err(MapViolation {
                edge: (source.name(a).to_string(), source.name(b).to_string()),
                image: (target.name(fa).to_string(), target.name(fb).to_string()),
            });
        }
    }
    Ok(GraphMap { source: source.clone(), target: target.clone(), assignment: assignment.to_vec() })
}

impl GraphMap {
    pub fn new(source: &DirectedGraph, target: &DirectedGraph, assignment: &[Vertex]) -> Result<Self> {
        check_map(source, target, assignment).map_err(|v| Error::InvalidMap(v.to_string()))
    }

    /// Map given by vertex names.
    pub fn from_names<S: AsRef<str>>(source: &DirectedGraph, target: &DirectedGraph, pairs: &[(S, S)]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.num_vertices()];
        for (a, b) in pairs {
            let a = source.require_vertex(a.as_ref())?;
            assignment[a] = target.require_vertex(b.as_ref())?;
        }
        if let Some(v) = assignment.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidMap(format!("vertex `{}` is unassigned", source.name(v))));
        }
        Self::new(source, target, &assignment)
    }

    /// Inclusion of a subgraph by vertex names.
    pub fn inclusion(sub: &DirectedGraph, sup: &DirectedGraph) -> Result<Self> {
        let mut assignment = Vec::with_capacity(sub.num_vertices());
        for name in sub.names() {
            assignment.push(sup.vertex(name).ok_or_else(|| Error::NotASubgraph(format!("vertex `{name}`")))?);
        }
        Self::new(sub, sup, &assignment)
    }

    pub fn identity(g: &DirectedGraph) -> Self {
        GraphMap { source: g.clone(), target: g.clone(), assignment: (0..g.num_vertices()).collect() }
    }

    pub fn source(&self) -> &DirectedGraph {
        &self.source
    }

    pub fn target(&self) -> &DirectedGraph {
        &self.target
    }

    pub fn assignment(&self) -> &[Vertex] {
        &self.assignment
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.assignment[v]
    }

    /// No edge is collapsed.
    pub fn is_homomorphism(&self) -> bool {
        self.source.edges().iter().all(|&(a, b)| self.assignment[a] != self.assignment[b])
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphMap) -> Result<GraphMap> {
        if self.target != other.source {
            return Err(Error::InvalidMap("composition of non-matching maps".into()));
        }
        let assignment: Vec<Vertex> = self.assignment.iter().map(|&v| other.assignment[v]).collect();
        Ok(GraphMap { source: self.source.clone(), target: other.target.clone(), assignment })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vec_path;

    #[test]
    fn check_map_examples() {
        let g = vec_path(2);
        let id = check_map(&g, &g, &[0, 1, 2]).unwrap();
        assert!(id.is_homomorphism());
        let c = check_map(&g, &g, &[1, 1, 1]).unwrap();
        assert!(!c.is_homomorphism());
        let cyc = DirectedGraph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert!(check_map(&cyc, &cyc, &[1, 0]).unwrap().is_homomorphism());
        let bad = check_map(&g, &g, &[2, 1, 0]).unwrap_err();
        assert_eq!(bad.edge, ("0".into(), "1".into()));
    }
}
