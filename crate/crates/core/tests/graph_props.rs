mod common;

use common::{arb_connected, arb_graph};
use mpss_core::graph::{
    check_map, complement, mapping_cylinder, parse_edge_list, parse_json, product, union, DirectedGraph, Distance,
    GraphMap, ProductKind,
};
use proptest::prelude::*;

fn sub_of(x: &DirectedGraph, keep_v: &[bool], keep_e: &[bool]) -> DirectedGraph {
    let names: Vec<&str> = (0..x.num_vertices()).filter(|&v| keep_v[v]).map(|v| x.name(v)).collect();
    let edges: Vec<(&str, &str)> = x
        .edges()
        .iter()
        .zip(keep_e)
        .filter(|&(&(a, b), &k)| k && keep_v[a] && keep_v[b])
        .map(|(&(a, b), _)| (x.name(a), x.name(b)))
        .collect();
    DirectedGraph::new(&names, &edges).unwrap()
}

fn without_vertex(g: &DirectedGraph, v: usize) -> DirectedGraph {
    let mut kv = vec![true; g.num_vertices()];
    kv[v] = false;
    sub_of(g, &kv, &vec![true; g.num_edges()])
}

fn without_edge(g: &DirectedGraph, e: usize) -> DirectedGraph {
    let mut ke = vec![true; g.num_edges()];
    ke[e] = false;
    sub_of(g, &vec![true; g.num_vertices()], &ke)
}

proptest! {
    #[test]
    fn quasimetric_axioms(g in arb_graph(7, 16)) {
        let n = g.num_vertices();
        for x in 0..n {
            prop_assert_eq!(g.distance(x, x), Distance::Finite(0));
            for y in 0..n {
                let d = g.distance(x, y);
                prop_assert_eq!(d == Distance::Finite(1), g.has_edge(x, y));
                if d == Distance::Finite(0) {
                    prop_assert_eq!(x, y);
                }
                for z in 0..n {
                    let via = match (g.distance(x, y), g.distance(y, z)) {
                        (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
                        _ => Distance::Infinite,
                    };
                    prop_assert!(via >= g.distance(x, z));
                }
            }
        }
    }

    #[test]
    fn complement_is_minimal(
        x in arb_graph(6, 12),
        kv in prop::collection::vec(any::<bool>(), 6),
        ke in prop::collection::vec(any::<bool>(), 12),
    ) {
        let a = sub_of(&x, &kv, &ke);
        let c = complement(&x, &a).unwrap();
        prop_assert!(union(&c, &a).same_as(&x));
        for v in 0..c.num_vertices() {
            prop_assert!(!union(&without_vertex(&c, v), &a).same_as(&x));
        }
        for e in 0..c.num_edges() {
            prop_assert!(!union(&without_edge(&c, e), &a).same_as(&x));
        }
    }

    #[test]
    fn product_edge_counts(x in arb_graph(4, 8), y in arb_graph(4, 8)) {
        let b = product(&x, &y, ProductKind::Box);
        let s = product(&x, &y, ProductKind::Strong);
        prop_assert_eq!(b.num_vertices(), x.num_vertices() * y.num_vertices());
        prop_assert_eq!(b.num_edges(), x.num_vertices() * y.num_edges() + x.num_edges() * y.num_vertices());
        prop_assert_eq!(s.num_edges(), b.num_edges() + x.num_edges() * y.num_edges());
        prop_assert!(b.is_subgraph_of(&s));
    }

    #[test]
    fn cylinder_retraction(a in arb_connected(4, 5, "a"), y in arb_connected(4, 6, "a"), assign in prop::collection::vec(0usize..4, 4)) {
        // "a" prefixes on both sides exercise the renaming of the A copy
        let assignment: Vec<usize> = assign[..a.num_vertices()].iter().map(|&v| v % y.num_vertices()).collect();
        let Ok(phi) = GraphMap::new(&a, &y, &assignment) else { return Ok(()) };
        let cyl = mapping_cylinder(&phi).unwrap();
        prop_assert!(check_map(&cyl.graph, &y, cyl.retraction.assignment()).is_ok());
        prop_assert_eq!(cyl.graph.num_vertices(), a.num_vertices() + y.num_vertices());
        for v in 0..y.num_vertices() {
            prop_assert_eq!(cyl.retraction.apply(cyl.from_y.apply(v)), v);
        }
        for v in 0..a.num_vertices() {
            prop_assert_eq!(cyl.retraction.apply(cyl.from_a.apply(v)), phi.apply(v));
        }
    }

    #[test]
    fn serialization_round_trips(g in arb_graph(7, 14)) {
        let json = g.to_json();
        let back = parse_json(&json).unwrap();
        prop_assert!(back.same_as(&g));
        prop_assert_eq!(back.to_json(), json);
        let text = g.to_edge_list();
        let back = parse_edge_list(&text).unwrap();
        prop_assert!(back.same_as(&g));
        prop_assert_eq!(back.to_edge_list(), text);
    }
}
