//! Pages of the spectral sequence of the weight filtration, computed as
//! explicit lattice subquotients, together with the homology theories that
//! appear on its pages and axes.
//!
//! `E^r_{p,q} = Z^r_p / (Z^{r-1}_{p-1} + ∂Z^{r-1}_{p+r-1})` in total degree
//! `n = p + q`, where `Z^r_p = { x ∈ F_p C_n : ∂x ∈ F_{p-r} C_{n-1} }`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{DirectedGraph, GraphMap};
use crate::linalg::lattice::{prefix_intersection, sparse_kernel};
use crate::linalg::matrix::{sparse_to_dense, SparseVec};
use crate::linalg::{sparse_invariant_factors, AbelianGroupInvariants, Int, IntMatrix, Subquotient};
use crate::nerve::FilteredChainComplex;

/// A page cell with SNF-adapted representatives living in `F_p C_{p+q}`.
#[derive(Clone, Debug)]
pub struct PageGroup {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub group: Subquotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageReport {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl PageGroup {
    pub fn invariants(&self) -> &AbelianGroupInvariants {
        &self.group.invariants
    }

    /// Chain-level representatives of the cyclic summands.
    pub fn representatives(&self) -> Vec<Vec<Int>> {
        self.group.representatives()
    }

    pub fn report(&self) -> PageReport {
        let inv = self.invariants();
        PageReport { r: self.r, p: self.p, q: self.q, rank: inv.rank, torsion: inv.torsion.clone() }
    }
}

fn zero_group() -> Subquotient {
    Subquotient::new(0, &[], &[]).expect("zero group")
}

/// Dense `∂x` in degree `n - 1` for `x` given on the first `x.len()`
/// generators of degree `n`.
fn apply_boundary(c: &FilteredChainComplex, n: usize, x: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::ZERO; c.dim(n - 1)];
    for (j, xj) in x.iter().enumerate() {
        if xj.is_zero() {
            continue;
        }
        for (i, v) in &c.boundary(n)[j] {
            out[*i] += &(xj * v);
        }
    }
    out
}

/// Lattice basis of `{ x ∈ F_p C_n : ∂x ∈ F_s C_{n-1} }`, as dense vectors
/// over the first `count(n, p)` generators.
pub fn filtered_cycles(c: &FilteredChainComplex, n: usize, p: i64, s: i64) -> Vec<Vec<Int>> {
    let k = c.count_upto(n, p);
    if n == 0 {
        return (0..k).map(|i| sparse_to_dense(&vec![(i, Int::ONE)], k)).collect();
    }
    let lo = c.count_upto(n - 1, s);
    let rows = c.dim(n - 1) - lo;
    let cols: Vec<SparseVec> = c.boundary(n)[..k]
        .iter()
        .map(|col| col.iter().filter(|(i, _)| *i >= lo).map(|(i, v)| (i - lo, v.clone())).collect())
        .collect();
    sparse_kernel(rows, &cols).iter().map(|v| sparse_to_dense(v, k)).collect()
}

fn pad(mut v: Vec<Int>, len: usize) -> Vec<Int> {
    v.resize(len, Int::ZERO);
    v
}

/// `E^r_{p,q}` on a prebuilt complex.
pub fn page_in(c: &FilteredChainComplex, r: usize, p: i64, q: i64) -> Result<PageGroup> {
    if r == 0 {
        return Err(Error::InvalidArgument("page index r must be at least 1".into()));
    }
    let n = p + q;
    if p < 0 || n < 0 {
        return Ok(PageGroup { r, p, q, group: zero_group() });
    }
    let (nu, ri) = (n as usize, r as i64);
    c.require(nu + 1, p + ri - 1)?;
    c.require(nu, p)?;
    let dim = c.count_upto(nu, p);
    let a = filtered_cycles(c, nu, p, p - ri);
    let mut b: Vec<Vec<Int>> = filtered_cycles(c, nu, p - 1, p - ri).into_iter().map(|v| pad(v, dim)).collect();
    for y in filtered_cycles(c, nu + 1, p + ri - 1, p) {
        let dy = apply_boundary(c, nu + 1, &y);
        debug_assert!(dy[dim..].iter().all(Int::is_zero));
        b.push(pad(dy, dim));
    }
    Ok(PageGroup { r, p, q, group: Subquotient::new(dim, &a, &b)? })
}

/// Complex large enough for `E^r_{p,q}` and both differentials touching it.
pub fn complex_for_page(x: &DirectedGraph, r: usize, p: i64, q: i64) -> FilteredChainComplex {
    let n = (p + q).max(0) as usize;
    FilteredChainComplex::build(x, n + 1, (p.max(0) as u64) + r as u64)
}

pub fn page(x: &DirectedGraph, r: usize, p: i64, q: i64) -> Result<PageGroup> {
    page_in(&complex_for_page(x, r, p, q), r, p, q)
}

/// Matrix of a linear map between two subquotients in summand coordinates;
/// `f` acts on ambient vectors of the source.
pub fn summand_matrix(src: &Subquotient, tgt: &Subquotient, f: impl Fn(&[Int]) -> Vec<Int>) -> Result<IntMatrix> {
    let mut cols = Vec::new();
    for rep in src.representatives() {
        let img = f(&rep);
        let cls = tgt
            .class_of(&img)
            .ok_or_else(|| Error::InvalidArgument("image of a representative is not a cycle of the target".into()))?;
        cols.push(cls);
    }
    Ok(IntMatrix::from_columns(tgt.num_summands(), &cols))
}

/// `d^r : E^r_{p,q} -> E^r_{p-r,q+r-1}` on summand bases, with both pages.
pub fn differential_in(
    c: &FilteredChainComplex,
    r: usize,
    p: i64,
    q: i64,
) -> Result<(PageGroup, PageGroup, IntMatrix)> {
    let src = page_in(c, r, p, q)?;
    let tgt = page_in(c, r, p - r as i64, q + r as i64 - 1)?;
    let n = p + q;
    let m = if src.group.num_summands() == 0 || tgt.group.num_summands() == 0 || n <= 0 {
        IntMatrix::zeros(tgt.group.num_summands(), src.group.num_summands())
    } else {
        let tdim = tgt.group.ambient_dim();
        summand_matrix(&src.group, &tgt.group, |x| {
            let dx = apply_boundary(c, n as usize, x);
            debug_assert!(dx[tdim..].iter().all(Int::is_zero));
            pad(dx, tdim)
        })?
    };
    Ok((src, tgt, m))
}

pub fn differential(x: &DirectedGraph, r: usize, p: i64, q: i64) -> Result<(PageGroup, PageGroup, IntMatrix)> {
    differential_in(&complex_for_page(x, r, p, q), r, p, q)
}

/// `E^1_{p,n-p}`, the homology of the graded piece `F_p / F_{p-1}`.
pub fn magnitude_homology(x: &DirectedGraph, p: i64, n: i64) -> Result<AbelianGroupInvariants> {
    Ok(page(x, 1, p, n - p)?.invariants().clone())
}

/// `E^2_{p,0}`.
pub fn path_homology(x: &DirectedGraph, p: i64) -> Result<AbelianGroupInvariants> {
    Ok(page(x, 2, p, 0)?.invariants().clone())
}

/// `E^r_{1,0}` as edge cycles modulo those cycles that bound in `F_r C_2`.
pub fn e10_via_cycles_in(c: &FilteredChainComplex, r: usize) -> Result<Subquotient> {
    if r < 2 {
        return Err(Error::InvalidArgument("the cycle route needs r >= 2".into()));
    }
    c.require(2, r as i64)?;
    let k = c.count_upto(1, 1);
    let cols: Vec<SparseVec> = c.boundary(1)[..k].to_vec();
    let z: Vec<Vec<Int>> = sparse_kernel(c.dim(0), &cols).iter().map(|v| sparse_to_dense(v, k)).collect();
    let m = c.count_upto(1, r as i64);
    let bd: Vec<Vec<Int>> =
        c.boundary(2)[..c.count_upto(2, r as i64)].iter().map(|col| sparse_to_dense(col, m)).collect();
    let b = prefix_intersection(m, &bd, k);
    Subquotient::new(k, &z, b.basis())
}

pub fn e10_via_cycles(x: &DirectedGraph, r: usize) -> Result<Subquotient> {
    e10_via_cycles_in(&FilteredChainComplex::build(x, 2, r as u64), r)
}

/// `H_n(F_p C)` by sparse elimination: rank from the boundary ranks,
/// torsion from the invariant factors of the incoming boundary.
pub fn homology_in(c: &FilteredChainComplex, n: usize, p: i64) -> Result<AbelianGroupInvariants> {
    c.require(n + 1, p)?;
    let k = c.count_upto(n, p);
    let rank_out = if n == 0 { 0 } else { sparse_invariant_factors(c.dim(n - 1), &c.boundary(n)[..k]).len() };
    let incoming = sparse_invariant_factors(c.dim(n), &c.boundary(n + 1)[..c.count_upto(n + 1, p)]);
    let torsion: Vec<Int> = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(AbelianGroupInvariants { rank: k - rank_out - incoming.len(), torsion })
}

/// `H_1(F_r C)`.
pub fn h1_filtered(x: &DirectedGraph, r: usize) -> Result<AbelianGroupInvariants> {
    homology_in(&FilteredChainComplex::build(x, 2, r as u64), 1, r as i64)
}

/// Weight cap at which `F_p C_{<= n+1}` is the whole complex in those degrees.
pub fn full_weight_cap(x: &DirectedGraph, n: usize) -> u64 {
    (n as u64 + 1) * x.quasimetric().diameter()
}

/// Homology of the full complex of finite-weight nondegenerate tuples.
pub fn reachability_homology(x: &DirectedGraph, n: usize) -> Result<AbelianGroupInvariants> {
    let cap = full_weight_cap(x, n);
    homology_in(&FilteredChainComplex::build(x, n + 1, cap), n, cap as i64)
}

/// `H_1(F_r C)` with cycle representatives, supporting induced maps.
#[derive(Clone, Debug)]
pub struct H1Model {
    pub complex: FilteredChainComplex,
    pub r: u64,
    pub group: Subquotient,
}

impl H1Model {
    pub fn new(x: &DirectedGraph, r: u64) -> Result<Self> {
        let complex = FilteredChainComplex::build(x, 2, r);
        let d1 = complex.dim(1);
        let z: Vec<Vec<Int>> =
            sparse_kernel(complex.dim(0), complex.boundary(1)).iter().map(|v| sparse_to_dense(v, d1)).collect();
        let b: Vec<Vec<Int>> = complex.boundary(2).iter().map(|col| sparse_to_dense(col, d1)).collect();
        let group = Subquotient::new(d1, &z, &b)?;
        Ok(H1Model { complex, r, group })
    }

    pub fn invariants(&self) -> &AbelianGroupInvariants {
        &self.group.invariants
    }

    /// Push a degree-1 chain forward along `f` into `target`'s chain module.
    pub fn push_chain(&self, f: &GraphMap, target: &H1Model, v: &[Int]) -> Vec<Int> {
        let cols = self.complex.chain_map(f, &target.complex, 1);
        let mut out = vec![Int::ZERO; target.complex.dim(1)];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &cols[j] {
                out[*i] += &(x * c);
            }
        }
        out
    }

    /// Matrix of `f_*` on the presentations of both groups, where each group
    /// is presented on a basis of its cycle lattice.
    pub fn induced_presentation_matrix(&self, f: &GraphMap, target: &H1Model) -> Result<IntMatrix> {
        let cols_map = self.complex.chain_map(f, &target.complex, 1);
        let mut cols = Vec::new();
        for b in self.group.numerator().basis() {
            let mut img = vec![Int::ZERO; target.complex.dim(1)];
            for (j, x) in b.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (i, c) in &cols_map[j] {
                    img[*i] += &(x * c);
                }
            }
            let coords = target
                .group
                .presentation_coordinates(&img)
                .ok_or_else(|| Error::InvalidMap("induced chain is not a cycle".into()))?;
            cols.push(coords);
        }
        Ok(IntMatrix::from_columns(target.group.numerator().rank(), &cols))
    }
}

/// Matrix of the projection `E^r_{1,0} -> E^{r+1}_{1,0}` on summand bases,
/// with both pages.
pub fn page_projection_in(c: &FilteredChainComplex, r: usize) -> Result<(PageGroup, PageGroup, IntMatrix)> {
    if r < 2 {
        return Err(Error::InvalidArgument("projection is defined for r >= 2".into()));
    }
    let src = page_in(c, r, 1, 0)?;
    let tgt = page_in(c, r + 1, 1, 0)?;
    let m = summand_matrix(&src.group, &tgt.group, <[Int]>::to_vec)?;
    Ok((src, tgt, m))
}

pub fn page_projection(x: &DirectedGraph, r: usize) -> Result<(PageGroup, PageGroup, IntMatrix)> {
    page_projection_in(&FilteredChainComplex::build(x, 2, r as u64 + 1), r)
}

/// Level from which `H_1(F_r C)` agrees with the reachability homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub rh1: AbelianGroupInvariants,
    /// `H_1(F_r C)` for `r = 1..=max_r`.
    pub levels: Vec<AbelianGroupInvariants>,
    /// Smallest `r` after which every computed level equals `rh1`.
    pub stable_from: Option<usize>,
    /// `F_{max_r}` already contains every generator of degree at most 2.
    pub max_r: usize,
}

pub fn h1_stabilization(x: &DirectedGraph) -> Result<Stabilization> {
    let max_r = (full_weight_cap(x, 1) as usize).max(1);
    let c = FilteredChainComplex::build(x, 2, max_r as u64);
    let rh1 = homology_in(&c, 1, max_r as i64)?;
    let levels: Vec<AbelianGroupInvariants> =
        (1..=max_r).map(|r| homology_in(&c, 1, r as i64)).collect::<Result<_>>()?;
    let mut stable_from = None;
    for r in (1..=max_r).rev() {
        if levels[r - 1] == rh1 {
            stable_from = Some(r);
        } else {
            break;
        }
    }
    Ok(Stabilization { rh1, levels, stable_from, max_r })
}

/// Invariants of `E^r_{p,n-p}` for every `p` in `ps` and `n` in `ns`.
pub fn page_table(
    c: &FilteredChainComplex,
    r: usize,
    ps: std::ops::RangeInclusive<i64>,
    ns: std::ops::RangeInclusive<i64>,
    exec: Exec,
) -> Result<Vec<PageReport>> {
    let cells: Vec<(i64, i64)> = ps.flat_map(|p| ns.clone().map(move |n| (p, n - p))).collect();
    exec.map(&cells, |&(p, q)| page_in(c, r, p, q).map(|g| g.report())).into_iter().collect()
}

/// Text rendering of a page table: rows by `q` descending, columns by `p`.
pub fn render_page_table(cells: &[PageReport]) -> String {
    use std::collections::BTreeSet;
    let ps: BTreeSet<i64> = cells.iter().map(|c| c.p).collect();
    let qs: BTreeSet<i64> = cells.iter().map(|c| c.q).collect();
    let text = |c: &PageReport| AbelianGroupInvariants { rank: c.rank, torsion: c.torsion.clone() }.to_string();
    let mut grid = vec![vec![String::new(); ps.len() + 1]; qs.len() + 1];
    grid[0][0] = "q\\p".into();
    for (j, p) in ps.iter().enumerate() {
        grid[0][j + 1] = p.to_string();
    }
    for (i, q) in qs.iter().rev().enumerate() {
        grid[i + 1][0] = q.to_string();
        for (j, p) in ps.iter().enumerate() {
            grid[i + 1][j + 1] = cells.iter().find(|c| c.p == *p && c.q == *q).map(text).unwrap_or_else(|| "·".into());
        }
    }
    let widths: Vec<usize> =
        (0..=ps.len()).map(|j| grid.iter().map(|row| row[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in grid {
        let cells: Vec<String> =
            row.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
