//! Finite simple directed graphs without loops, their quasimetric, and the
//! constructions built on top of them.

mod build;
mod io;
mod map;
mod ops;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Add;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use build::{gamma, path_graph, product, reversed_at, vec_path, ProductKind};
pub use io::{parse_edge_list, parse_json};
pub use map::{check_map, GraphMap, MapViolation};
pub use ops::{
    complement, disjoint_union, induced_subgraph, intersection, mapping_cylinder, pushout_along_inclusion, reach,
    union, Cylinder, Pushout,
};

/// Dense vertex index into a [`DirectedGraph`].
pub type Vertex = usize;

/// Shortest directed distance; `Infinite` when unreachable. Sums saturate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl Add for Distance {
    type Output = Distance;
    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// All-pairs directed distances, row-major by source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasimetric {
    n: usize,
    d: Vec<Distance>,
}

impl Quasimetric {
    fn compute(g: &DirectedGraph) -> Self {
        let n = g.num_vertices();
        let mut d = vec![Distance::Infinite; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = Distance::ZERO;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let dx = row[x].finite().expect("queued vertices are reached");
                for &y in g.out_neighbors(x) {
                    if row[y] == Distance::Infinite {
                        row[y] = Distance::Finite(dx + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        Quasimetric { n, d }
    }

    pub fn get(&self, x: Vertex, y: Vertex) -> Distance {
        self.d[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Largest finite distance, `0` for graphs without edges.
    pub fn diameter(&self) -> u64 {
        self.d.iter().filter_map(|x| x.finite()).max().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<Vec<Distance>> {
        self.d.chunks(self.n.max(1)).take(self.n).map(<[Distance]>::to_vec).collect()
    }
}

/// A finite directed graph with named vertices, no loops and no parallel
/// edges. Vertex order and edge order are those given at construction.
#[derive(Clone)]
pub struct DirectedGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    edges: Vec<(Vertex, Vertex)>,
    edge_index: HashMap<(Vertex, Vertex), usize>,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
    dist: OnceLock<Quasimetric>,
}

impl DirectedGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyVertexName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| Error::UnknownEndpoint(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownEndpoint(b.to_string()))?;
            idx_edges.push((ia, ib));
        }
        Self::from_parts(names, idx_edges)
    }

    /// Graph whose vertices are the edge endpoints in order of appearance.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut vertices: Vec<&str> = Vec::new();
        for (a, b) in edges {
            for v in [a.as_ref(), b.as_ref()] {
                if seen.insert(v, ()).is_none() {
                    vertices.push(v);
                }
            }
        }
        let pairs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_ref(), b.as_ref())).collect();
        Self::new(&vertices, &pairs)
    }

    pub(crate) fn from_parts(names: Vec<String>, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyVertexName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::LoopEdge(names[a].clone()));
            }
            if edge_index.insert((a, b), k).is_some() {
                return Err(Error::DuplicateEdge(names[a].clone(), names[b].clone()));
            }
            out[a].push(b);
            inn[b].push(a);
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
        }
        Ok(DirectedGraph { names, index, edges, edge_index, out, inn, dist: OnceLock::new() })
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn point(name: &str) -> Self {
        Self::from_parts(vec![name.to_string()], Vec::new()).expect("single vertex is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<Vertex> {
        self.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_index.contains_key(&(a, b))
    }

    pub fn edge_id(&self, a: Vertex, b: Vertex) -> Option<usize> {
        self.edge_index.get(&(a, b)).copied()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inn[v]
    }

    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges.iter().map(|&(a, b)| (self.names[a].clone(), self.names[b].clone())).collect()
    }

    pub fn has_named_edge(&self, a: &str, b: &str) -> bool {
        match (self.vertex(a), self.vertex(b)) {
            (Some(a), Some(b)) => self.has_edge(a, b),
            _ => false,
        }
    }

    pub fn quasimetric(&self) -> &Quasimetric {
        self.dist.get_or_init(|| Quasimetric::compute(self))
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> Distance {
        self.quasimetric().get(x, y)
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                k += 1;
                for &y in self.out[x].iter().chain(&self.inn[x]) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Nonempty and connected as an undirected graph.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Same vertex names and same named edges, regardless of order.
    pub fn same_as(&self, other: &DirectedGraph) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.num_edges() == other.num_edges()
            && self.names.iter().all(|n| other.vertex(n).is_some())
            && self.edges.iter().all(|&(a, b)| other.has_named_edge(&self.names[a], &self.names[b]))
    }

    /// True when every vertex and edge of `self` occurs (by name) in `other`.
    pub fn is_subgraph_of(&self, other: &DirectedGraph) -> bool {
        self.names.iter().all(|n| other.vertex(n).is_some())
            && self.edges.iter().all(|&(a, b)| other.has_named_edge(&self.names[a], &self.names[b]))
    }

    pub fn is_induced_subgraph_of(&self, other: &DirectedGraph) -> bool {
        if !self.is_subgraph_of(other) {
            return false;
        }
        let count = other
            .edges
            .iter()
            .filter(|&&(a, b)| self.vertex(&other.names[a]).is_some() && self.vertex(&other.names[b]).is_some())
            .count();
        count == self.num_edges()
    }
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirectedGraph {{ vertices: {:?}, edges: [", self.names)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.names[*a], self.names[*b])?;
        }
        write!(f, "] }}")
    }
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for DirectedGraph {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_graph_examples() {
        let g = DirectedGraph::new(&["a"], &[]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
        let g = DirectedGraph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(DirectedGraph::new(&["a"], &[("a", "a")]), Err(Error::LoopEdge("a".into())));
        assert!(matches!(DirectedGraph::new(&["a", "b"], &[("a", "b"), ("a", "b")]), Err(Error::DuplicateEdge(..))));
        assert!(matches!(DirectedGraph::new(&["a"], &[("a", "z")]), Err(Error::UnknownEndpoint(_))));
    }

    #[test]
    fn quasimetric_examples() {
        let p = DirectedGraph::point("x");
        assert_eq!(p.quasimetric().rows(), vec![vec![Distance::ZERO]]);
        let v = vec_path(3);
        assert_eq!(v.distance(0, 3), Distance::Finite(3));
        assert_eq!(v.distance(3, 0), Distance::Infinite);
        let g = gamma(3);
        let (u0, u3) = (g.vertex("u0").unwrap(), g.vertex("u3").unwrap());
        let (u1, v1) = (g.vertex("u1").unwrap(), g.vertex("v1").unwrap());
        assert_eq!(g.distance(u0, u3), Distance::Finite(3));
        assert_eq!(g.distance(u1, v1), Distance::Infinite);
    }

    #[test]
    fn infinity_saturates() {
        assert_eq!(Distance::Finite(2) + Distance::Infinite, Distance::Infinite);
        assert!(Distance::Finite(u64::MAX) < Distance::Infinite);
    }
}
