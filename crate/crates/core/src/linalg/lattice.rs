//! Sublattices of `Z^n`: Hermite bases, kernels, subquotients and
//! finitely presented abelian groups with homomorphisms between them.

use super::int::Int;
use super::invariants::AbelianGroupInvariants;
use super::matrix::{dense_to_sparse, sparse_axpy, sparse_get, sparse_to_dense, IntMatrix, SparseVec};
use super::snf::{invariant_factors, smith_left};
use crate::error::Error;

/// A sublattice of `Z^dim` stored by its canonical row Hermite basis:
/// pivots strictly increase, pivot entries are positive, and entries above
/// each pivot are reduced into `[0, pivot)`. Equal lattices have equal bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<Int>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim).map(|i| (0..dim).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect()).collect();
        Lattice { dim, basis, pivots: (0..dim).collect() }
    }

    pub fn from_generators(dim: usize, gens: &[Vec<Int>]) -> Self {
        let mut rows: Vec<Vec<Int>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        for r in &rows {
            assert_eq!(r.len(), dim, "generator of wrong length");
        }
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            if top == rows.len() {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for i in top..rows.len() {
                    let x = &rows[i][col];
                    if !x.is_zero() && best.is_none_or(|b| x.cmp_abs(&rows[b][col]) == std::cmp::Ordering::Less) {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                rows.swap(top, b);
                let mut leftover = false;
                for i in top + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_round(&rows[top][col]);
                    sub_multiple(&mut rows, i, top, &q, col);
                    leftover |= !rows[i][col].is_zero();
                }
                if !leftover {
                    break;
                }
            }
            if top < rows.len() && !rows[top][col].is_zero() {
                if rows[top][col].is_negative() {
                    for x in rows[top].iter_mut() {
                        *x = -&*x;
                    }
                }
                for i in 0..top {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[top][col]);
                    sub_multiple(&mut rows, i, top, &q, col);
                }
                pivots.push(col);
                top += 1;
            }
        }
        rows.truncate(top);
        Lattice { dim, basis: rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.basis.iter().enumerate().all(|(i, r)| r[self.pivots[i]].is_one())
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rest[p].checked_exact_div(&row[p])?;
            if !c.is_zero() {
                for j in p..self.dim {
                    if !row[j].is_zero() {
                        let d = &c * &row[j];
                        rest[j] -= &d;
                    }
                }
            }
            coords.push(c);
        }
        rest.iter().all(Int::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.dim, &gens)
    }

    /// Vector with the given coordinates in the Hermite basis.
    pub fn combine(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.rank());
        let mut out = vec![Int::ZERO; self.dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    out[j] += &(c * &row[j]);
                }
            }
        }
        out
    }
}

fn sub_multiple(rows: &mut [Vec<Int>], dst: usize, src: usize, q: &Int, from: usize) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for j in from..a.len() {
        if !b[j].is_zero() {
            let d = q * &b[j];
            a[j] -= &d;
        }
    }
}

/// `span(gens) ∩ (Z^k × 0)`, returned inside `Z^k`.
pub fn prefix_intersection(dim: usize, gens: &[Vec<Int>], k: usize) -> Lattice {
    // in reversed coordinates the prefix becomes a suffix, which an echelon
    // basis cuts out as the rows pivoting at or after `dim - k`
    let rev: Vec<Vec<Int>> = gens.iter().map(|g| g.iter().rev().cloned().collect()).collect();
    let l = Lattice::from_generators(dim, &rev);
    let kept: Vec<Vec<Int>> = l
        .basis
        .iter()
        .zip(&l.pivots)
        .filter(|(_, &p)| p >= dim - k)
        .map(|(row, _)| row.iter().rev().take(k).cloned().collect())
        .collect();
    Lattice::from_generators(k, &kept)
}

/// Lattice basis of `{ x : M x = 0 }` for a matrix given by sparse columns,
/// returned as sparse vectors over the column indices.
///
/// Columns are combined by unimodular operations row by row; a column that
/// keeps the last nonzero entry of a row becomes a pivot and leaves the
/// active set. Whatever is still active at the end is zero, and its
/// accumulated transforms form a primitive basis of the kernel.
pub fn sparse_kernel(nrows: usize, cols: &[SparseVec]) -> Vec<SparseVec> {
    let n = cols.len();
    let mut work: Vec<SparseVec> = cols.to_vec();
    let mut trans: Vec<SparseVec> = (0..n).map(|j| vec![(j, Int::ONE)]).collect();
    let mut active: Vec<bool> = vec![true; n];
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    for (j, c) in work.iter().enumerate() {
        for (i, _) in c {
            row_cols[*i].push(j);
        }
    }
    for r in 0..nrows {
        let mut hits: Vec<usize> =
            row_cols[r].iter().copied().filter(|&j| active[j] && sparse_get(&work[j], r).is_some()).collect();
        hits.sort_unstable();
        hits.dedup();
        while hits.len() > 1 {
            let p = *hits
                .iter()
                .min_by(|&&a, &&b| {
                    let va = sparse_get(&work[a], r).expect("hit");
                    let vb = sparse_get(&work[b], r).expect("hit");
                    va.cmp_abs(vb).then(work[a].len().cmp(&work[b].len())).then(a.cmp(&b))
                })
                .expect("nonempty");
            let pv = sparse_get(&work[p], r).expect("hit").clone();
            let (pcol, ptrans) = (work[p].clone(), trans[p].clone());
            let mut next = vec![p];
            for &j in &hits {
                if j == p {
                    continue;
                }
                let x = sparse_get(&work[j], r).expect("hit").clone();
                let q = -x.div_round(&pv);
                let before: Vec<usize> = work[j].iter().map(|(i, _)| *i).collect();
                work[j] = sparse_axpy(&work[j], &q, &pcol);
                trans[j] = sparse_axpy(&trans[j], &q, &ptrans);
                // keep the row index in sync with fill-in
                for (i, _) in &work[j] {
                    if before.binary_search(i).is_err() {
                        row_cols[*i].push(j);
                    }
                }
                if sparse_get(&work[j], r).is_some() {
                    next.push(j);
                }
            }
            hits = next;
        }
        if let Some(&p) = hits.first() {
            active[p] = false;
        }
    }
    (0..n).filter(|&j| active[j]).map(|j| std::mem::take(&mut trans[j])).collect()
}

/// Kernel basis of a dense matrix, one basis vector per column of the result.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let cols: Vec<SparseVec> = m.columns().iter().map(|c| dense_to_sparse(c)).collect();
    let ker = sparse_kernel(m.nrows(), &cols);
    let dense: Vec<Vec<Int>> = ker.iter().map(|v| sparse_to_dense(v, m.ncols())).collect();
    IntMatrix::from_columns(m.ncols(), &dense)
}

/// A subquotient `A / B` of `Z^dim` with `B ⊆ A`, diagonalized so that
/// classes can be read off in invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    a: Lattice,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Smith diagonal of the relation coordinates, padded with zeros to rank A.
    diag: Vec<Int>,
    /// Positions in `diag` carrying a nontrivial cyclic summand.
    summands: Vec<usize>,
    relations: IntMatrix,
    pub invariants: AbelianGroupInvariants,
}

impl Subquotient {
    pub fn new(dim: usize, a_gens: &[Vec<Int>], b_gens: &[Vec<Int>]) -> Result<Self, Error> {
        let a = Lattice::from_generators(dim, a_gens);
        let b = Lattice::from_generators(dim, b_gens);
        Self::from_lattices(a, &b)
    }

    pub fn from_lattices(a: Lattice, b: &Lattice) -> Result<Self, Error> {
        let k = a.rank();
        let mut coords = Vec::with_capacity(b.rank());
        for (idx, g) in b.basis().iter().enumerate() {
            coords.push(a.coordinates(g).ok_or(Error::NotASublattice { generator: idx })?);
        }
        let relations = IntMatrix::from_columns(k, &coords);
        let (u, u_inv, mut diag) = smith_left(&relations);
        diag.resize(k, Int::ZERO);
        let summands: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
        let nonzero: Vec<Int> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
        let invariants = AbelianGroupInvariants::from_relation_diagonal(k, &nonzero);
        Ok(Subquotient { a, u, u_inv, diag, summands, relations, invariants })
    }

    pub fn ambient_dim(&self) -> usize {
        self.a.dim()
    }

    pub fn numerator(&self) -> &Lattice {
        &self.a
    }

    /// Number of cyclic summands, free ones included.
    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// Order of each cyclic summand, `0` for `Z`.
    pub fn orders(&self) -> Vec<Int> {
        self.summands.iter().map(|&i| self.diag[i].clone()).collect()
    }

    /// Ambient vectors generating the cyclic summands, in summand order.
    pub fn representatives(&self) -> Vec<Vec<Int>> {
        self.summands
            .iter()
            .map(|&i| {
                let coords: Vec<Int> = (0..self.a.rank()).map(|j| self.u_inv[(j, i)].clone()).collect();
                self.a.combine(&coords)
            })
            .collect()
    }

    /// Class of an ambient vector in summand coordinates (torsion entries
    /// reduced into `[0, d)`), or `None` if the vector is outside `A`.
    pub fn class_of(&self, v: &[Int]) -> Option<Vec<Int>> {
        let c = self.a.coordinates(v)?;
        let y = self.u.mul_vec(&c);
        Some(
            self.summands
                .iter()
                .map(|&i| {
                    let d = &self.diag[i];
                    if d.is_zero() {
                        y[i].clone()
                    } else {
                        &y[i] - &(&y[i].div_floor(d) * d)
                    }
                })
                .collect(),
        )
    }

    /// The group as `Z^summands` modulo the torsion orders, matching the
    /// coordinates returned by [`class_of`](Self::class_of).
    pub fn summand_presentation(&self) -> AbelianPresentation {
        let k = self.num_summands();
        let cols: Vec<Vec<Int>> = self
            .orders()
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![Int::ZERO; k];
                c[i] = d;
                c
            })
            .collect();
        AbelianPresentation { generators: k, relations: IntMatrix::from_columns(k, &cols) }
    }

    pub fn is_zero_class(&self, v: &[Int]) -> Option<bool> {
        self.class_of(v).map(|c| c.iter().all(Int::is_zero))
    }

    /// The same group as a presentation on the basis of `A`.
    pub fn presentation(&self) -> AbelianPresentation {
        AbelianPresentation { generators: self.a.rank(), relations: self.relations.clone() }
    }

    /// Coordinates of an ambient vector of `A` on the presentation generators.
    pub fn presentation_coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.a.coordinates(v)
    }
}

/// Invariants of `span(A) / span(B)` inside `Z^dim`.
pub fn subquotient_invariants(
    dim: usize,
    a_gens: &[Vec<Int>],
    b_gens: &[Vec<Int>],
) -> Result<AbelianGroupInvariants, Error> {
    let a = Lattice::from_generators(dim, a_gens);
    let b = Lattice::from_generators(dim, b_gens);
    let mut coords = Vec::with_capacity(b.rank());
    for (idx, g) in b.basis().iter().enumerate() {
        coords.push(a.coordinates(g).ok_or(Error::NotASublattice { generator: idx })?);
    }
    let rel = IntMatrix::from_columns(a.rank(), &coords);
    Ok(AbelianGroupInvariants::from_relation_diagonal(a.rank(), &invariant_factors(&rel)))
}

/// `Z^generators / span(columns of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub generators: usize,
    pub relations: IntMatrix,
}

impl AbelianPresentation {
    pub fn free(generators: usize) -> Self {
        AbelianPresentation { generators, relations: IntMatrix::zeros(generators, 0) }
    }

    pub fn invariants(&self) -> AbelianGroupInvariants {
        AbelianGroupInvariants::from_relation_diagonal(self.generators, &invariant_factors(&self.relations))
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_generators(self.generators, &self.relations.columns())
    }

    /// Direct sum of two presentations (block-diagonal relations).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let g = self.generators + other.generators;
        let mut cols = Vec::new();
        for c in self.relations.columns() {
            let mut v = c;
            v.resize(g, Int::ZERO);
            cols.push(v);
        }
        for c in other.relations.columns() {
            let mut v = vec![Int::ZERO; self.generators];
            v.extend(c);
            cols.push(v);
        }
        AbelianPresentation { generators: g, relations: IntMatrix::from_columns(g, &cols) }
    }
}

/// A homomorphism between presented groups, given on generators
/// (`target.generators x source.generators`).
pub fn is_well_defined(map: &IntMatrix, source: &AbelianPresentation, target: &AbelianPresentation) -> bool {
    let rel = target.relation_lattice();
    source.relations.columns().iter().all(|c| rel.contains(&map.mul_vec(c)))
}

/// Lattice of generator vectors of `source` whose image vanishes in `target`.
pub fn kernel_lattice(map: &IntMatrix, target: &AbelianPresentation) -> Lattice {
    // solutions of map x - R y = 0, projected onto x
    let stacked = map.hcat(&target.relations.neg());
    let ker = kernel_basis(&stacked);
    let n = map.ncols();
    let gens: Vec<Vec<Int>> = ker.columns().into_iter().map(|c| c[..n].to_vec()).collect();
    Lattice::from_generators(n, &gens)
}

/// Lattice of generator vectors of `target` hit by `map` modulo relations.
pub fn image_lattice(map: &IntMatrix, target: &AbelianPresentation) -> Lattice {
    let mut gens = map.columns();
    gens.extend(target.relations.columns());
    Lattice::from_generators(target.generators, &gens)
}

pub fn is_surjective(map: &IntMatrix, target: &AbelianPresentation) -> bool {
    image_lattice(map, target).is_full()
}

pub fn is_injective(map: &IntMatrix, source: &AbelianPresentation, target: &AbelianPresentation) -> bool {
    kernel_lattice(map, target) == source.relation_lattice()
}

/// Exactness of `left --alpha--> mid --beta--> right` at `mid`.
pub fn is_exact_at_middle(
    alpha: &IntMatrix,
    beta: &IntMatrix,
    mid: &AbelianPresentation,
    right: &AbelianPresentation,
) -> bool {
    image_lattice(alpha, mid) == kernel_lattice(beta, right)
}
