//! Seeded graph generators and the small named examples used by the test
//! suites, benches and the command line.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{check_map, gamma, induced_subgraph, DirectedGraph, GraphMap, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn refs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random connected digraph on `1..=max_vertices` vertices with at most
/// `max_edges` edges: a random spanning tree with random orientations, then
/// extra random edges.
pub fn random_connected(rng: &mut impl Rng, max_vertices: usize, max_edges: usize, prefix: &str) -> DirectedGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let names = named(prefix, n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    let cap = max_edges.max(n.saturating_sub(1)).min(n * n.saturating_sub(1));
    let target = rng.gen_range(edges.len()..=cap);
    let mut free: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && !edges.contains(&(a, b))).collect();
    free.shuffle(rng);
    edges.extend(free.into_iter().take(target - edges.len()));
    let named_edges: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (names[a].as_str(), names[b].as_str())).collect();
    DirectedGraph::new(&refs(&names), &named_edges).expect("generated graphs are simple")
}

/// `count` connected digraphs with at most 8 vertices and 14 edges.
pub fn connected_corpus(seed: u64, count: usize) -> Vec<DirectedGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_connected(&mut r, 8, 14, "x")).collect()
}

/// Pairs of small connected digraphs with disjoint names, for products.
pub fn product_pairs(seed: u64, count: usize) -> Vec<(DirectedGraph, DirectedGraph)> {
    let mut r = rng(seed);
    (0..count).map(|_| (random_connected(&mut r, 5, 7, "a"), random_connected(&mut r, 5, 7, "b"))).collect()
}

/// Pairs of subgraphs `(X, Y)` of a random connected digraph, both induced
/// on vertex sets that overlap, with `X`, `Y` and `X ∩ Y` connected.
pub fn overlapping_pairs(seed: u64, count: usize) -> Vec<(DirectedGraph, DirectedGraph)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let g = random_connected(&mut r, 7, 11, "x");
        if g.num_vertices() < 3 {
            continue;
        }
        let mut order: Vec<Vertex> = (0..g.num_vertices()).collect();
        order.shuffle(&mut r);
        let n = order.len();
        let lo = r.gen_range(1..n - 1);
        let hi = r.gen_range(lo + 1..n);
        let (sx, sy) = (&order[..hi], &order[lo..]);
        let pick = |s: &[Vertex]| induced_subgraph(&g, &s.iter().map(|&v| g.name(v)).collect::<Vec<_>>());
        let (Ok(x), Ok(y)) = (pick(sx), pick(sy)) else { continue };
        let i = crate::graph::intersection(&x, &y);
        if x.is_connected() && y.is_connected() && i.num_vertices() > 0 && i.is_connected() {
            out.push((x, y));
        }
    }
    out
}

/// An inclusion candidate `A ⊆ X` and a map `A -> Y`: `X` extends `A` by
/// vertices that receive edges from `A` or from each other but never send
/// edges back into `A`.
pub fn glueing_data(rng: &mut impl Rng) -> (DirectedGraph, GraphMap) {
    let a = random_connected(rng, 3, 3, "a");
    let extra = rng.gen_range(1..=3);
    let na = a.num_vertices();
    let mut names: Vec<String> = a.names().to_vec();
    names.extend(named("n", extra));
    let mut edges: Vec<(usize, usize)> = a.edges().to_vec();
    for v in na..na + extra {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        for w in na..v {
            if w != u && rng.gen_bool(0.3) {
                edges.push(if rng.gen_bool(0.5) { (w, v) } else { (v, w) });
            }
        }
        if rng.gen_bool(0.3) {
            let s = rng.gen_range(0..na);
            if s != u {
                edges.push((s, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let named_edges: Vec<(&str, &str)> = edges.iter().map(|&(s, t)| (names[s].as_str(), names[t].as_str())).collect();
    let x = DirectedGraph::new(&refs(&names), &named_edges).expect("simple");
    let y = random_connected(rng, 4, 6, "y");
    let mut phi = None;
    for _ in 0..64 {
        let assignment: Vec<Vertex> = (0..na).map(|_| rng.gen_range(0..y.num_vertices())).collect();
        if let Ok(m) = check_map(&a, &y, &assignment) {
            phi = Some(m);
            break;
        }
    }
    let phi = phi.unwrap_or_else(|| GraphMap::new(&a, &y, &vec![0; na]).expect("constant maps are maps"));
    (x, phi)
}

/// The directed squares `X_1..X_4` with top-left vertex `x{i}` and the other
/// corners `tr`, `bl`, `br`.
pub fn square(i: usize) -> DirectedGraph {
    let tl = format!("x{i}");
    let tl = tl.as_str();
    let edges: [(&str, &str); 4] = match i {
        1 => [("bl", tl), (tl, "tr"), ("br", "tr"), ("bl", "br")],
        2 => [("bl", tl), (tl, "tr"), ("tr", "br"), ("bl", "br")],
        3 => [("bl", tl), (tl, "tr"), ("tr", "br"), ("br", "bl")],
        4 => [(tl, "bl"), (tl, "tr"), ("br", "tr"), ("br", "bl")],
        _ => panic!("squares are numbered 1 to 4"),
    };
    DirectedGraph::new(&[tl, "tr", "bl", "br"], &edges).expect("simple")
}

/// Two graphs sharing the bottom path `x0 -> ... -> x{r+1}`, each adding one
/// apex over it: `x0 -> a -> x{r+1}` in `X`, `x0 -> b -> x{r+1}` in `Y`.
pub fn apex_pair(r: usize) -> (DirectedGraph, DirectedGraph) {
    let bottom: Vec<String> = named("x", r + 2);
    let build = |apex: &str| {
        let mut names = bottom.clone();
        names.push(apex.to_string());
        let mut edges: Vec<(String, String)> = bottom.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        edges.push((bottom[0].clone(), apex.to_string()));
        edges.push((apex.to_string(), bottom[r + 1].clone()));
        let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        DirectedGraph::new(&refs(&names), &e).expect("simple")
    };
    (build("a"), build("b"))
}

/// `Γ_r` with the chord `u{r-1} -> v{r-1}`, split into the induced subgraphs on
/// `{u0..u{r-1}, v1..v{r-1}}` and `{u{r-1}, u{r}, v{r-1}}`. Requires `r >= 2`.
pub fn chord_pair(r: usize) -> (DirectedGraph, DirectedGraph) {
    assert!(r >= 2);
    let g = gamma(r);
    let mut edges = g.edge_names();
    edges.push((format!("u{}", r - 1), format!("v{}", r - 1)));
    let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let full = DirectedGraph::new(&refs(g.names()), &e).expect("simple");
    let mut xs: Vec<String> = (0..r).map(|i| format!("u{i}")).collect();
    xs.extend((1..r).map(|i| format!("v{i}")));
    let ys = [format!("u{}", r - 1), format!("u{r}"), format!("v{}", r - 1)];
    (induced_subgraph(&full, &xs).expect("names exist"), induced_subgraph(&full, &ys).expect("names exist"))
}
