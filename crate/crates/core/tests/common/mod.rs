#![allow(dead_code)]

use mpss_core::corpus::{random_connected, rng};
use mpss_core::graph::DirectedGraph;
use proptest::prelude::*;

/// Any simple digraph on `1..=max_v` vertices named `g0, g1, ...`.
pub fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = DirectedGraph> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |pairs| {
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let mut edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            edges.sort_unstable();
            edges.dedup();
            let named: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (names[a].as_str(), names[b].as_str())).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            DirectedGraph::new(&refs, &named).unwrap()
        })
    })
}

/// A connected digraph from the seeded corpus generator.
pub fn arb_connected(max_v: usize, max_e: usize, prefix: &'static str) -> impl Strategy<Value = DirectedGraph> {
    any::<u64>().prop_map(move |s| random_connected(&mut rng(s), max_v, max_e, prefix))
}
