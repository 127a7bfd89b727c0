use std::collections::HashSet;

use serde::Serialize;

use super::hurewicz::spanning_tree;
use super::{free_reduce, Letter};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Vertex};
use crate::linalg::{sparse_invariant_factors, AbelianGroupInvariants, Int, SparseVec};
use crate::mpss::{full_weight_cap, reachability_homology};

/// Every directed edge walk with at most `max_len` edges, as
/// `(start, end, edges)`, sorted by endpoints, then length, then edge indices.
pub fn directed_walks(g: &DirectedGraph, max_len: usize) -> Vec<(Vertex, Vertex, Vec<usize>)> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn grow(
        g: &DirectedGraph,
        start: Vertex,
        at: Vertex,
        max_len: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vertex, Vertex, Vec<usize>)>,
    ) {
        out.push((start, at, path.clone()));
        if path.len() == max_len {
            return;
        }
        for &y in g.out_neighbors(at) {
            path.push(g.edge_id(at, y).expect("out neighbor"));
            grow(g, start, y, max_len, path, out);
            path.pop();
        }
    }
    for s in 0..g.num_vertices() {
        grow(g, s, s, max_len, &mut path, &mut out);
    }
    out.sort_by(|a, b| (a.0, a.1, a.2.len(), &a.2).cmp(&(b.0, b.1, b.2.len(), &b.2)));
    out
}

/// A directed walk paired with the canonical walk between the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorPair {
    pub source: Vertex,
    pub target: Vertex,
    pub walk: Vec<usize>,
    pub canonical: Vec<usize>,
}

impl RelatorPair {
    /// `walk · canonical⁻¹` as letters.
    pub fn word(&self) -> Vec<Letter> {
        let mut w: Vec<Letter> = self.walk.iter().map(|&e| Letter { edge: e, forward: true }).collect();
        w.extend(self.canonical.iter().rev().map(|&e| Letter { edge: e, forward: false }));
        w
    }
}

/// Identifications of the groupoid: for each pair of vertices, every directed
/// walk with at most `r` edges is equated with the canonical one (the first
/// in length-then-lexicographic order; the empty walk when the ends agree).
pub fn groupoid_relations(x: &DirectedGraph, r: usize) -> Vec<RelatorPair> {
    let walks = directed_walks(x, r);
    let mut out = Vec::new();
    let mut i = 0;
    while i < walks.len() {
        let (s, t, ref canonical) = walks[i];
        let mut j = i + 1;
        while j < walks.len() && walks[j].0 == s && walks[j].1 == t {
            out.push(RelatorPair { source: s, target: t, walk: walks[j].2.clone(), canonical: canonical.clone() });
            j += 1;
        }
        i = j;
    }
    out
}

/// A finite group presentation with generators named by the edges they
/// come from and relators as words of signed 1-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub basepoint: String,
    pub r: usize,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
    /// Graph edge index of each generator.
    #[serde(skip)]
    pub edge_of: Vec<usize>,
}

impl GroupPresentation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "generators": self.generators, "relators": self.relators })
    }

    /// Exponent sums of each relator, as sparse columns over the generators.
    pub fn exponent_columns(&self) -> Vec<SparseVec> {
        self.relators
            .iter()
            .map(|w| {
                let mut sums = vec![0i64; self.generators.len()];
                for &l in w {
                    sums[l.unsigned_abs() as usize - 1] += l.signum();
                }
                sums.into_iter().enumerate().filter(|(_, s)| *s != 0).map(|(i, s)| (i, Int::from(s))).collect()
            })
            .collect()
    }

    /// Exponent vector of a word of graph-edge letters on these generators.
    pub fn exponent_vector(&self, letters: &[Letter]) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.generators.len()];
        for l in letters {
            let i = self.edge_of.iter().position(|&e| e == l.edge).expect("edge in the basepoint component");
            out[i] += &Int::from(if l.forward { 1 } else { -1 });
        }
        out
    }
}

/// Presentation of `π_1^r(X, x0)`: one generator per edge of the basepoint's
/// component, the spanning-tree edges set to 1, and the groupoid relations
/// with at most `r` edges read as loops.
pub fn pi1_presentation(x: &DirectedGraph, x0: &str, r: usize) -> Result<GroupPresentation> {
    let base = x.vertex(x0).ok_or_else(|| Error::UnknownBasepoint(x0.to_string()))?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let tree = spanning_tree(x, base);
    let in_comp = |v: Vertex| v == base || tree[v].is_some();
    let edge_of: Vec<usize> = (0..x.num_edges()).filter(|&e| in_comp(x.edges()[e].0)).collect();
    let mut gen_of = vec![usize::MAX; x.num_edges()];
    for (i, &e) in edge_of.iter().enumerate() {
        gen_of[e] = i;
    }
    let generators = edge_of
        .iter()
        .map(|&e| {
            let (a, b) = x.edges()[e];
            format!("{}->{}", x.name(a), x.name(b))
        })
        .collect();
    let encode = |w: &[Letter]| -> Vec<i64> {
        w.iter()
            .map(|l| {
                let k = gen_of[l.edge] as i64 + 1;
                if l.forward {
                    k
                } else {
                    -k
                }
            })
            .collect()
    };
    let mut relators: Vec<Vec<i64>> = Vec::new();
    let mut tree_edges: Vec<usize> = tree.iter().flatten().map(|l| l.edge).collect();
    tree_edges.sort_unstable();
    for e in tree_edges {
        relators.push(vec![gen_of[e] as i64 + 1]);
    }
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    for pair in groupoid_relations(x, r) {
        if !in_comp(pair.source) {
            continue;
        }
        let w = free_reduce(&pair.word());
        if !w.is_empty() && seen.insert(w.clone()) {
            relators.push(encode(&w));
        }
    }
    Ok(GroupPresentation { basepoint: x0.to_string(), r, generators, relators, edge_of })
}

/// Smith normal form of the relator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroupInvariants {
    let n = p.generators.len();
    let diag = sparse_invariant_factors(n, &p.exponent_columns());
    AbelianGroupInvariants::from_relation_diagonal(n, &diag)
}

/// Abelianization of `π_1^r` for increasing `r` until it matches the first
/// reachability homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1InftyReport {
    pub rh1: AbelianGroupInvariants,
    /// First `r` whose abelianization equals `rh1`.
    pub stabilized_at: usize,
    /// Abelianizations for `r = 1..=stabilized_at`.
    pub levels: Vec<AbelianGroupInvariants>,
}

/// The scan stops with [`Error::NoStabilization`] once `max_r` is exceeded
/// (default: twice the diameter, where every walk relation of `π_1^∞`
/// is already present).
pub fn pi1_infty_abelianization(x: &DirectedGraph, x0: &str, max_r: Option<usize>) -> Result<Pi1InftyReport> {
    x.vertex(x0).ok_or_else(|| Error::UnknownBasepoint(x0.to_string()))?;
    let rh1 = reachability_homology(x, 1)?;
    let limit = max_r.unwrap_or((full_weight_cap(x, 1) as usize).max(1));
    let mut levels = Vec::new();
    for r in 1..=limit {
        let ab = abelianization(&pi1_presentation(x, x0, r)?);
        let done = ab == rh1;
        levels.push(ab);
        if done {
            return Ok(Pi1InftyReport { rh1, stabilized_at: r, levels });
        }
    }
    Err(Error::NoStabilization(limit))
}
