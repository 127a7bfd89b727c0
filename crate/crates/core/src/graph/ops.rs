use std::collections::{HashMap, HashSet};

use super::{DirectedGraph, GraphMap, Vertex};
use crate::error::{Error, Result};

fn fresh_name(taken: &HashSet<String>, base: &str) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Smallest subgraph `X - A` with `(X - A) ∪ A = X`: the vertices outside
/// `A` together with the endpoints of edges outside `A`.
pub fn complement(x: &DirectedGraph, a: &DirectedGraph) -> Result<DirectedGraph> {
    if !a.is_subgraph_of(x) {
        return Err(Error::NotASubgraph("complement needs A ⊆ X".into()));
    }
    let outside: Vec<(Vertex, Vertex)> =
        x.edges().iter().copied().filter(|&(u, v)| !a.has_named_edge(x.name(u), x.name(v))).collect();
    let mut keep: Vec<bool> = x.names().iter().map(|n| a.vertex(n).is_none()).collect();
    for &(u, v) in &outside {
        keep[u] = true;
        keep[v] = true;
    }
    let sub = restrict(x, &keep, |u, v| !a.has_named_edge(x.name(u), x.name(v)));
    Ok(sub)
}

fn restrict(x: &DirectedGraph, keep: &[bool], edge_ok: impl Fn(Vertex, Vertex) -> bool) -> DirectedGraph {
    let mut new_id = vec![usize::MAX; x.num_vertices()];
    let mut names = Vec::new();
    for v in 0..x.num_vertices() {
        if keep[v] {
            new_id[v] = names.len();
            names.push(x.name(v).to_string());
        }
    }
    let edges = x
        .edges()
        .iter()
        .filter(|&&(u, v)| keep[u] && keep[v] && edge_ok(u, v))
        .map(|&(u, v)| (new_id[u], new_id[v]))
        .collect();
    DirectedGraph::from_parts(names, edges).expect("subgraph of a simple graph")
}

/// Full subgraph on the named vertices, in the vertex order of `x`.
pub fn induced_subgraph<S: AsRef<str>>(x: &DirectedGraph, names: &[S]) -> Result<DirectedGraph> {
    let mut keep = vec![false; x.num_vertices()];
    for n in names {
        keep[x.require_vertex(n.as_ref())?] = true;
    }
    Ok(restrict(x, &keep, |_, _| true))
}

/// Vertices reachable by a directed path (possibly of length 0) from `a`.
pub fn reach(x: &DirectedGraph, a: &[Vertex]) -> Vec<Vertex> {
    let q = x.quasimetric();
    (0..x.num_vertices()).filter(|&v| a.iter().any(|&s| q.get(s, v).is_finite())).collect()
}

/// Union of two graphs whose vertices are identified by name. Vertex and
/// edge order: those of `x`, then the new ones of `y`.
pub fn union(x: &DirectedGraph, y: &DirectedGraph) -> DirectedGraph {
    let mut names: Vec<String> = x.names().to_vec();
    let mut index: HashMap<String, Vertex> = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    for n in y.names() {
        if !index.contains_key(n) {
            index.insert(n.clone(), names.len());
            names.push(n.clone());
        }
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (g, es) in [(x, x.edges()), (y, y.edges())] {
        for &(u, v) in es {
            let e = (index[g.name(u)], index[g.name(v)]);
            if seen.insert(e) {
                edges.push(e);
            }
        }
    }
    DirectedGraph::from_parts(names, edges).expect("union of simple graphs")
}

/// Common vertices and edges (by name), in the order of `x`.
pub fn intersection(x: &DirectedGraph, y: &DirectedGraph) -> DirectedGraph {
    let keep: Vec<bool> = x.names().iter().map(|n| y.vertex(n).is_some()).collect();
    restrict(x, &keep, |u, v| y.has_named_edge(x.name(u), x.name(v)))
}

/// Disjoint union; vertices of `y` clashing with `x` get primed names.
pub fn disjoint_union(x: &DirectedGraph, y: &DirectedGraph) -> DirectedGraph {
    let mut names: Vec<String> = x.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    taken.extend(y.names().iter().cloned());
    for n in y.names() {
        let name = if x.vertex(n).is_some() { fresh_name(&taken, n) } else { n.clone() };
        taken.insert(name.clone());
        names.push(name);
    }
    let off = x.num_vertices();
    let mut edges = x.edges().to_vec();
    edges.extend(y.edges().iter().map(|&(u, v)| (u + off, v + off)));
    DirectedGraph::from_parts(names, edges).expect("disjoint union of simple graphs")
}

/// Mapping cylinder of `phi: A -> Y` with its structure maps.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub graph: DirectedGraph,
    /// Identity on `Y`, `a ↦ phi(a)` on the copy of `A`.
    pub retraction: GraphMap,
    pub from_y: GraphMap,
    pub from_a: GraphMap,
}

pub fn mapping_cylinder(phi: &GraphMap) -> Result<Cylinder> {
    let (a, y) = (phi.source(), phi.target());
    GraphMap::new(a, y, phi.assignment())?;
    let mut names: Vec<String> = y.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    taken.extend(a.names().iter().cloned());
    let off = y.num_vertices();
    for n in a.names() {
        let name = fresh_name(&taken, n);
        taken.insert(name.clone());
        names.push(name);
    }
    let mut edges = y.edges().to_vec();
    edges.extend(a.edges().iter().map(|&(u, v)| (u + off, v + off)));
    edges.extend((0..a.num_vertices()).map(|v| (v + off, phi.apply(v))));
    let graph = DirectedGraph::from_parts(names, edges)?;
    let retract: Vec<Vertex> = (0..off).chain((0..a.num_vertices()).map(|v| phi.apply(v))).collect();
    let retraction = GraphMap::new(&graph, y, &retract)?;
    let from_y = GraphMap::new(y, &graph, &(0..off).collect::<Vec<_>>())?;
    let from_a = GraphMap::new(a, &graph, &(off..off + a.num_vertices()).collect::<Vec<_>>())?;
    Ok(Cylinder { graph, retraction, from_y, from_a })
}

/// `X ∪_A Y` with its two structure maps.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub graph: DirectedGraph,
    pub from_x: GraphMap,
    pub from_y: GraphMap,
}

/// Glues `x` to `y` along `phi_y: A -> Y`, where `A = phi_y.source()` must be
/// an induced subgraph of `x`. Vertices of `Y` come first; vertices of
/// `X - A` whose names clash with `Y` are primed. Edges collapsed by the
/// identification are dropped and parallel images merged.
pub fn pushout_along_inclusion(x: &DirectedGraph, phi_y: &GraphMap) -> Result<Pushout> {
    let (a, y) = (phi_y.source(), phi_y.target());
    if !a.is_induced_subgraph_of(x) {
        return Err(Error::NotInducedSubgraph("A must be an induced subgraph of X".into()));
    }
    let mut names: Vec<String> = y.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    taken.extend(x.names().iter().cloned());
    let mut image = Vec::with_capacity(x.num_vertices());
    for n in x.names() {
        match a.vertex(n) {
            Some(av) => image.push(phi_y.apply(av)),
            None => {
                let name = if y.vertex(n).is_some() { fresh_name(&taken, n) } else { n.to_string() };
                taken.insert(name.clone());
                image.push(names.len());
                names.push(name);
            }
        }
    }
    let mut seen: HashSet<(Vertex, Vertex)> = y.edges().iter().copied().collect();
    let mut edges = y.edges().to_vec();
    for &(u, v) in x.edges() {
        let e = (image[u], image[v]);
        if e.0 != e.1 && seen.insert(e) {
            edges.push(e);
        }
    }
    let graph = DirectedGraph::from_parts(names, edges)?;
    let from_x = GraphMap::new(x, &graph, &image)?;
    let from_y = GraphMap::new(y, &graph, &(0..y.num_vertices()).collect::<Vec<_>>())?;
    Ok(Pushout { graph, from_x, from_y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vec_path;

    fn g(v: &[&str], e: &[(&str, &str)]) -> DirectedGraph {
        DirectedGraph::new(v, e).unwrap()
    }

    #[test]
    fn complement_examples() {
        let x = g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")]);
        assert_eq!(complement(&x, &x).unwrap().num_vertices(), 0);
        assert_eq!(complement(&x, &DirectedGraph::empty()).unwrap(), x);
        let chord = induced_subgraph(&x, &["a", "c"]).unwrap();
        assert_eq!(chord.num_edges(), 2);
        let only = g(&["a", "c"], &[("a", "c")]);
        let c = complement(&x, &only).unwrap();
        assert_eq!(c.names(), &["a", "b", "c"]);
        assert_eq!(c.num_edges(), 3);
        assert!(!c.has_named_edge("a", "c"));
        assert!(matches!(complement(&only, &x), Err(Error::NotASubgraph(_))));
    }

    #[test]
    fn reach_examples() {
        let x = g(&["a", "b"], &[("a", "b")]);
        assert_eq!(reach(&x, &[0]), vec![0, 1]);
        assert_eq!(reach(&x, &[1]), vec![1]);
        assert_eq!(reach(&x, &[0, 1]), vec![0, 1]);
    }

    #[test]
    fn cylinder_examples() {
        let p = DirectedGraph::point("y");
        let a = DirectedGraph::point("a");
        let c = mapping_cylinder(&GraphMap::new(&a, &p, &[0]).unwrap()).unwrap();
        assert_eq!((c.graph.num_vertices(), c.graph.num_edges()), (2, 1));
        let i1 = vec_path(1);
        let c = mapping_cylinder(&GraphMap::new(&i1, &p, &[0, 0]).unwrap()).unwrap();
        assert_eq!((c.graph.num_vertices(), c.graph.num_edges()), (3, 3));
        assert!(c.graph.has_named_edge("0'", "1'"));
        assert!(c.graph.has_named_edge("0'", "y"));
        assert!(c.graph.has_named_edge("1'", "y"));
        assert_eq!(c.retraction.assignment(), &[0, 0, 0]);
    }

    #[test]
    fn pushout_examples() {
        let x = g(&["a", "b"], &[("a", "b")]);
        let y = g(&["c", "d"], &[("c", "d")]);
        let a = DirectedGraph::point("b");
        let p = pushout_along_inclusion(&x, &GraphMap::new(&a, &y, &[0]).unwrap()).unwrap();
        assert_eq!(p.graph.num_vertices(), 3);
        assert!(p.graph.has_named_edge("a", "c") && p.graph.has_named_edge("c", "d"));

        let e = DirectedGraph::empty();
        let p = pushout_along_inclusion(&x, &GraphMap::new(&e, &y, &[]).unwrap()).unwrap();
        assert_eq!((p.graph.num_vertices(), p.graph.num_edges()), (4, 2));

        let p = pushout_along_inclusion(&x, &GraphMap::new(&x, &y, &[0, 1]).unwrap()).unwrap();
        assert!(p.graph.same_as(&y));

        let tri = g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let not_induced = g(&["a", "c"], &[]);
        let r = pushout_along_inclusion(&tri, &GraphMap::new(&not_induced, &y, &[0, 0]).unwrap());
        assert!(matches!(r, Err(Error::NotInducedSubgraph(_))));
    }

    #[test]
    fn union_and_intersection() {
        let x = g(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let y = g(&["b", "c", "d"], &[("b", "c"), ("c", "d")]);
        let u = union(&x, &y);
        assert_eq!((u.num_vertices(), u.num_edges()), (4, 3));
        let i = intersection(&x, &y);
        assert_eq!(i.names(), &["b", "c"]);
        assert_eq!(i.num_edges(), 1);
    }
}
