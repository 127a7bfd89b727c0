use std::collections::VecDeque;

use serde::Serialize;

use super::presentation::{abelianization, pi1_presentation};
use super::{hurewicz_chain_in, Letter, Walk};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Vertex};
use crate::linalg::{
    is_surjective, kernel_lattice, sparse_to_dense, AbelianGroupInvariants, AbelianPresentation, Int, IntMatrix,
    Lattice,
};
use crate::mpss::{e10_via_cycles_in, homology_in, page_in};
use crate::nerve::FilteredChainComplex;

/// BFS spanning tree of the underlying undirected graph rooted at `root`,
/// visiting neighbors in vertex order and preferring the forward edge when
/// both directions exist. Entry `v` is the letter entering `v`, `None` for the
/// root and for vertices outside its component.
pub fn spanning_tree(g: &DirectedGraph, root: Vertex) -> Vec<Option<Letter>> {
    let n = g.num_vertices();
    let mut parent: Vec<Option<Letter>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let mut nbrs: Vec<Vertex> = g.out_neighbors(x).iter().chain(g.in_neighbors(x)).copied().collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        for y in nbrs {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            parent[y] = Some(match g.edge_id(x, y) {
                Some(e) => Letter { edge: e, forward: true },
                None => Letter { edge: g.edge_id(y, x).expect("neighbor"), forward: false },
            });
            queue.push_back(y);
        }
    }
    parent
}

/// Letters of the tree path from the root to `v`.
pub fn tree_path(g: &DirectedGraph, tree: &[Option<Letter>], v: Vertex) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut at = v;
    while let Some(l) = tree[at] {
        out.push(l);
        at = l.source(g);
    }
    out.reverse();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurewiczReport {
    pub r: usize,
    pub abelianization: AbelianGroupInvariants,
    pub page: AbelianGroupInvariants,
    pub via_cycles: AbelianGroupInvariants,
    pub h1_filtered: AbelianGroupInvariants,
    pub groups_agree: bool,
    /// Every generator loop maps to an edge cycle.
    pub loops_are_cycles: bool,
    /// Every relator maps into the boundaries `Z ∩ ∂F_r C_2`.
    pub relators_vanish: bool,
    pub surjective: bool,
    /// The generator vectors mapping to zero are exactly the relator lattice.
    pub kernel_is_relator_lattice: bool,
}

impl HurewiczReport {
    pub fn ok(&self) -> bool {
        self.groups_agree
            && self.loops_are_cycles
            && self.relators_vanish
            && self.surjective
            && self.kernel_is_relator_lattice
    }
}

/// Compares the abelianized `π_1^r(X, x0)` with `E^r_{1,0}` computed three
/// ways, and checks the Hurewicz map generator by generator.
///
/// Requires a connected graph and `r >= 2`.
pub fn hurewicz_check(x: &DirectedGraph, x0: &str, r: usize) -> Result<HurewiczReport> {
    hurewicz_check_in(&FilteredChainComplex::build(x, 2, r as u64), x, x0, r)
}

pub fn hurewicz_check_in(c: &FilteredChainComplex, x: &DirectedGraph, x0: &str, r: usize) -> Result<HurewiczReport> {
    let base = x.vertex(x0).ok_or_else(|| Error::UnknownBasepoint(x0.to_string()))?;
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    c.require(2, r as i64)?;
    let pres = pi1_presentation(x, x0, r)?;
    let ab = abelianization(&pres);
    let page = page_in(c, r, 1, 0)?.invariants().clone();
    let sq = e10_via_cycles_in(c, r)?;
    let h1 = homology_in(c, 1, r as i64)?;
    let groups_agree = ab == page && ab == sq.invariants && ab == h1;

    let tree = spanning_tree(x, base);
    let images: Vec<Vec<Int>> = pres
        .edge_of
        .iter()
        .map(|&e| {
            let (a, b) = x.edges()[e];
            let mut w = tree_path(x, &tree, a);
            w.push(Letter { edge: e, forward: true });
            w.extend(tree_path(x, &tree, b).into_iter().rev().map(Letter::inverse));
            hurewicz_chain_in(x, c, &Walk::from_letters(x, base, &w))
        })
        .collect();
    let k = c.count_upto(1, 1);
    let h = IntMatrix::from_columns(k, &images);
    let loops_are_cycles = images.iter().all(|v| sq.numerator().contains(v));

    let ngen = pres.generators.len();
    let relator_cols: Vec<Vec<Int>> = pres.exponent_columns().iter().map(|col| sparse_to_dense(col, ngen)).collect();
    let relator_lattice = Lattice::from_generators(ngen, &relator_cols);
    let quotient = sq.presentation();
    let boundary_gens: Vec<Vec<Int>> =
        quotient.relations.columns().iter().map(|cs| sq.numerator().combine(cs)).collect();
    let boundaries = AbelianPresentation { generators: k, relations: IntMatrix::from_columns(k, &boundary_gens) };
    let w = boundaries.relation_lattice();
    let relators_vanish = relator_lattice.basis().iter().all(|v| w.contains(&h.mul_vec(v)));

    let surjective = loops_are_cycles && {
        let coords: Vec<Vec<Int>> = images.iter().map(|v| sq.presentation_coordinates(v).expect("cycle")).collect();
        is_surjective(&IntMatrix::from_columns(sq.numerator().rank(), &coords), &quotient)
    };
    let kernel_is_relator_lattice = kernel_lattice(&h, &boundaries) == relator_lattice;

    Ok(HurewiczReport {
        r,
        abelianization: ab,
        page,
        via_cycles: sq.invariants.clone(),
        h1_filtered: h1,
        groups_agree,
        loops_are_cycles,
        relators_vanish,
        surjective,
        kernel_is_relator_lattice,
    })
}
