//! Nondegenerate tuples of the nerve and the weight-filtered normalized
//! chain complex built from them.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Distance, GraphMap, Vertex};
use crate::linalg::{Int, SparseVec};

/// A nondegenerate tuple `(x_0, ..., x_n)` of finite weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tuple {
    pub vertices: Vec<Vertex>,
    pub weight: u64,
}

impl Tuple {
    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn render(&self, g: &DirectedGraph) -> String {
        let names: Vec<&str> = self.vertices.iter().map(|&v| g.name(v)).collect();
        names.join(",")
    }
}

/// Sum of consecutive distances.
pub fn tuple_weight(x: &DirectedGraph, vertices: &[Vertex]) -> Distance {
    let q = x.quasimetric();
    vertices.windows(2).fold(Distance::ZERO, |acc, w| acc + q.get(w[0], w[1]))
}

pub fn tuple_weight_named<S: AsRef<str>>(x: &DirectedGraph, names: &[S]) -> Result<Distance> {
    let vs: Vec<Vertex> = names.iter().map(|n| x.require_vertex(n.as_ref())).collect::<Result<_>>()?;
    Ok(tuple_weight(x, &vs))
}

/// Position of each vertex in the name-sorted order; comparing tuples by
/// these ranks is comparing them lexicographically by names.
fn name_ranks(x: &DirectedGraph) -> Vec<usize> {
    let mut order: Vec<Vertex> = (0..x.num_vertices()).collect();
    order.sort_by(|&a, &b| x.name(a).cmp(x.name(b)));
    let mut rank = vec![0; order.len()];
    for (i, v) in order.into_iter().enumerate() {
        rank[v] = i;
    }
    rank
}

fn canonical_sort(x: &DirectedGraph, tuples: &mut [Tuple]) {
    let rank = name_ranks(x);
    tuples.sort_by(|a, b| {
        a.weight.cmp(&b.weight).then_with(|| {
            let ka = a.vertices.iter().map(|&v| rank[v]);
            let kb = b.vertices.iter().map(|&v| rank[v]);
            ka.cmp(kb)
        })
    });
}

/// All nondegenerate `(n+1)`-tuples of weight at most `p`, sorted by weight
/// and then lexicographically by vertex names.
pub fn enumerate_generators(x: &DirectedGraph, n: usize, p: u64) -> Vec<Tuple> {
    let q = x.quasimetric();
    let nv = x.num_vertices();
    let mut out = Vec::new();
    let mut stack: Vec<Vertex> = Vec::with_capacity(n + 1);
    fn extend(
        q: &crate::graph::Quasimetric,
        nv: usize,
        n: usize,
        p: u64,
        acc: u64,
        stack: &mut Vec<Vertex>,
        out: &mut Vec<Tuple>,
    ) {
        if stack.len() == n + 1 {
            out.push(Tuple { vertices: stack.clone(), weight: acc });
            return;
        }
        let last = *stack.last().expect("nonempty");
        for y in 0..nv {
            if y == last {
                continue;
            }
            if let Distance::Finite(d) = q.get(last, y) {
                if acc + d <= p {
                    stack.push(y);
                    extend(q, nv, n, p, acc + d, stack, out);
                    stack.pop();
                }
            }
        }
    }
    for s in 0..nv {
        stack.push(s);
        extend(q, nv, n, p, 0, &mut stack, &mut out);
        stack.pop();
    }
    canonical_sort(x, &mut out);
    out
}

/// The normalized complex of the nerve truncated to degrees `0..=n_max`
/// and weights `0..=p_max`. Generators of each degree are canonically
/// sorted, so the filtration level `F_p` is a prefix of every degree.
#[derive(Clone, Debug)]
pub struct FilteredChainComplex {
    n_max: usize,
    p_max: u64,
    gens: Vec<Vec<Tuple>>,
    index: Vec<HashMap<Vec<Vertex>, usize>>,
    /// `boundaries[n][j]` is `∂` of generator `j` of degree `n` (empty for `n = 0`).
    boundaries: Vec<Vec<SparseVec>>,
}

/// Boundary `Σ (-1)^i d_i` with faces dropping `x_i` where `x_{i-1} = x_{i+1}`.
pub fn boundary_of(t: &[Vertex], lookup: impl Fn(&[Vertex]) -> usize) -> SparseVec {
    let n = t.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let mut entries: Vec<(usize, Int)> = Vec::with_capacity(n + 1);
    let mut face = Vec::with_capacity(n);
    for i in 0..=n {
        if i > 0 && i < n && t[i - 1] == t[i + 1] {
            continue;
        }
        face.clear();
        face.extend(t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
        let sign = if i % 2 == 0 { Int::ONE } else { Int::from(-1) };
        entries.push((lookup(&face), sign));
    }
    entries.sort_by_key(|e| e.0);
    let mut col: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match col.last_mut() {
            Some((j, acc)) if *j == i => *acc += &v,
            _ => col.push((i, v)),
        }
    }
    col.retain(|(_, v)| !v.is_zero());
    col
}

impl FilteredChainComplex {
    pub fn build(x: &DirectedGraph, n_max: usize, p_max: u64) -> Self {
        Self::build_with(x, n_max, p_max, crate::exec::Exec::Parallel)
    }

    pub fn build_with(x: &DirectedGraph, n_max: usize, p_max: u64, exec: crate::exec::Exec) -> Self {
        x.quasimetric();
        let gens: Vec<Vec<Tuple>> = exec.map_range(n_max + 1, |n| enumerate_generators(x, n, p_max));
        let index: Vec<HashMap<Vec<Vertex>, usize>> =
            gens.iter().map(|g| g.iter().enumerate().map(|(i, t)| (t.vertices.clone(), i)).collect()).collect();
        let boundaries: Vec<Vec<SparseVec>> = exec.map_range(n_max + 1, |n| {
            if n == 0 {
                return vec![Vec::new(); gens[0].len()];
            }
            let below = &index[n - 1];
            gens[n]
                .iter()
                .map(|t| boundary_of(&t.vertices, |f| *below.get(f).expect("faces stay within the weight cap")))
                .collect()
        });
        FilteredChainComplex { n_max, p_max, gens, index, boundaries }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn p_max(&self) -> u64 {
        self.p_max
    }

    pub fn generators(&self, n: usize) -> &[Tuple] {
        &self.gens[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.gens[n].len()
    }

    pub fn index_of(&self, n: usize, t: &[Vertex]) -> Option<usize> {
        self.index[n].get(t).copied()
    }

    pub fn weight(&self, n: usize, i: usize) -> u64 {
        self.gens[n][i].weight
    }

    /// Number of degree-`n` generators of weight at most `p` (0 for `p < 0`).
    pub fn count_upto(&self, n: usize, p: i64) -> usize {
        if p < 0 {
            return 0;
        }
        self.gens[n].partition_point(|t| t.weight <= p as u64)
    }

    /// Boundary columns of degree `n` into degree `n - 1`.
    pub fn boundary(&self, n: usize) -> &[SparseVec] {
        &self.boundaries[n]
    }

    pub fn require(&self, n: usize, p: i64) -> Result<()> {
        if n > self.n_max || p > self.p_max as i64 {
            return Err(Error::InsufficientCaps {
                what: format!(
                    "degree {n} at weight {p}, complex built to degree {} at weight {}",
                    self.n_max, self.p_max
                ),
            });
        }
        Ok(())
    }

    /// Text dump: generator lines `n p x0,...,xn`, then one block per
    /// boundary matrix with `row col value` triples.
    pub fn dump(&self, x: &DirectedGraph) -> String {
        let mut s = String::new();
        for (n, gs) in self.gens.iter().enumerate() {
            for t in gs {
                let _ = writeln!(s, "{n} {} {}", t.weight, t.render(x));
            }
        }
        for n in 1..=self.n_max {
            let _ = writeln!(s, "# boundary {n} {}x{}", self.dim(n - 1), self.dim(n));
            for (j, col) in self.boundaries[n].iter().enumerate() {
                for (i, v) in col {
                    let _ = writeln!(s, "{i} {j} {v}");
                }
            }
        }
        s
    }

    /// Columns of the chain map induced by `f` in degree `n`: each tuple goes
    /// to its image tuple, or to zero when the image is degenerate.
    pub fn chain_map(&self, f: &GraphMap, target: &FilteredChainComplex, n: usize) -> Vec<SparseVec> {
        self.gens[n]
            .iter()
            .map(|t| {
                let img: Vec<Vertex> = t.vertices.iter().map(|&v| f.apply(v)).collect();
                if img.windows(2).any(|w| w[0] == w[1]) {
                    return Vec::new();
                }
                let j = target.index_of(n, &img).expect("maps do not increase weight");
                vec![(j, Int::ONE)]
            })
            .collect()
    }
}
