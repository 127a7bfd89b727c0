use super::{DirectedGraph, Vertex};

/// Two directed paths of length `r` from `u0` to `ur`, sharing only their
/// endpoints. `gamma(0)` is a point and `gamma(1)` a single edge.
pub fn gamma(r: usize) -> DirectedGraph {
    let mut names: Vec<String> = (0..=r).map(|i| format!("u{i}")).collect();
    let mut edges: Vec<(Vertex, Vertex)> = (0..r).map(|i| (i, i + 1)).collect();
    if r >= 2 {
        // v_i lives at index r + i for 1 <= i < r
        names.extend((1..r).map(|i| format!("v{i}")));
        let v = |i: usize| {
            if i == 0 {
                0
            } else if i == r {
                r
            } else {
                r + i
            }
        };
        edges.extend((0..r).map(|i| (v(i), v(i + 1))));
    }
    DirectedGraph::from_parts(names, edges).expect("gamma is simple")
}

/// Path graph on `0..=n` with step `i` oriented by the `i`-th character
/// (`+` for `i -> i+1`, anything else for `i+1 -> i`).
pub fn path_graph(orientations: &str) -> DirectedGraph {
    let n = orientations.chars().count();
    let names = (0..=n).map(|i| i.to_string()).collect();
    let edges = orientations.chars().enumerate().map(|(i, c)| if c == '+' { (i, i + 1) } else { (i + 1, i) }).collect();
    DirectedGraph::from_parts(names, edges).expect("path graph is simple")
}

/// The directed path `0 -> 1 -> ... -> n`.
pub fn vec_path(n: usize) -> DirectedGraph {
    path_graph(&"+".repeat(n))
}

/// The directed path on `0..=n` with the edge between `k` and `k+1` reversed.
pub fn reversed_at(n: usize, k: usize) -> DirectedGraph {
    assert!(k < n, "edge ({k},{}) is not in a path of length {n}", k + 1);
    let word: String = (0..n).map(|i| if i == k { '-' } else { '+' }).collect();
    path_graph(&word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Box,
    Strong,
}

/// Box or strong product; the vertex `(x, y)` is named `x|y`, in x-major order.
pub fn product(x: &DirectedGraph, y: &DirectedGraph, kind: ProductKind) -> DirectedGraph {
    let (nx, ny) = (x.num_vertices(), y.num_vertices());
    let id = |a: Vertex, b: Vertex| a * ny + b;
    let mut names = Vec::with_capacity(nx * ny);
    for a in 0..nx {
        for b in 0..ny {
            names.push(format!("{}|{}", x.name(a), y.name(b)));
        }
    }
    let mut edges = Vec::new();
    for &(a, a2) in x.edges() {
        for b in 0..ny {
            edges.push((id(a, b), id(a2, b)));
        }
    }
    for a in 0..nx {
        for &(b, b2) in y.edges() {
            edges.push((id(a, b), id(a, b2)));
        }
    }
    if kind == ProductKind::Strong {
        for &(a, a2) in x.edges() {
            for &(b, b2) in y.edges() {
                edges.push((id(a, b), id(a2, b2)));
            }
        }
    }
    DirectedGraph::from_parts(names, edges).expect("products of simple graphs are simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::check_map;

    #[test]
    fn gamma_sizes() {
        assert_eq!((gamma(0).num_vertices(), gamma(0).num_edges()), (1, 0));
        let g1 = gamma(1);
        assert_eq!((g1.num_vertices(), g1.num_edges()), (2, 1));
        assert!(g1.has_named_edge("u0", "u1"));
        assert_eq!((gamma(4).num_vertices(), gamma(4).num_edges()), (8, 8));
        let g = gamma(3);
        for (a, b) in [("u0", "u1"), ("u2", "u3"), ("u0", "v1"), ("v1", "v2"), ("v2", "u3")] {
            assert!(g.has_named_edge(a, b), "{a}->{b}");
        }
    }

    #[test]
    fn path_graph_examples() {
        assert_eq!(path_graph("").num_vertices(), 1);
        assert_eq!(path_graph("+++"), vec_path(3));
        let r = reversed_at(3, 1);
        assert_eq!(r.edge_names(), vec![("0".into(), "1".into()), ("2".into(), "1".into()), ("2".into(), "3".into())]);
    }

    #[test]
    fn product_examples() {
        let i1 = vec_path(1);
        let b = product(&i1, &i1, ProductKind::Box);
        assert_eq!((b.num_vertices(), b.num_edges()), (4, 4));
        // the square is Γ_2 with u0 = 0|0, u2 = 1|1
        let g2 = gamma(2);
        let names = ["0|0", "0|1", "1|1", "1|0"];
        let iso: Vec<usize> = ["u0", "u1", "u2", "v1"].iter().zip(names).map(|(_, n)| b.vertex(n).unwrap()).collect();
        let m = check_map(&g2, &b, &iso).unwrap();
        assert!(m.is_homomorphism());
        let s = product(&i1, &i1, ProductKind::Strong);
        assert_eq!(s.num_edges(), 5);
        assert!(s.has_named_edge("0|0", "1|1"));
    }
}
