//! Smith normal form over the integers.
//!
//! Pivoting picks the nonzero entry of smallest absolute value in the active
//! block (ties broken by row-major position), clears its row and column with
//! rounded quotients, and repeats until the pivot divides the rest of the
//! block. Transforms are tracked only on request.

use super::int::Int;
use super::matrix::{sparse_axpy, sparse_get, IntMatrix, SparseVec};

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...` up to `min(rows, cols)`, zeros
    /// included.
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Reducer {
    a: IntMatrix,
    u: Option<(IntMatrix, IntMatrix)>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn row_add(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_row_multiple(dst, src, k);
        if let Some((u, u_inv)) = &mut self.u {
            u.add_row_multiple(dst, src, k);
            u_inv.add_col_multiple(src, dst, &-k);
        }
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if let Some((u, u_inv)) = &mut self.u {
            u.swap_rows(a, b);
            u_inv.swap_cols(a, b);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some((u, u_inv)) = &mut self.u {
            u.negate_row(i);
            u_inv.negate_col(i);
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].cmp_abs(x) != std::cmp::Ordering::Greater => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let (m, n) = (self.a.nrows(), self.a.ncols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                // clear column t and row t
                let mut leftover = false;
                for i in t + 1..m {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_round(&self.a[(t, t)]);
                        self.row_add(i, t, &-q);
                        leftover |= !self.a[(i, t)].is_zero();
                    }
                }
                for j in t + 1..n {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_round(&self.a[(t, t)]);
                        self.col_add(j, t, &-q);
                        leftover |= !self.a[(t, j)].is_zero();
                    }
                }
                if leftover {
                    let mut best: Option<(bool, usize)> = None;
                    let mut best_val = self.a[(t, t)].clone();
                    for i in t + 1..m {
                        let x = &self.a[(i, t)];
                        if !x.is_zero() && x.cmp_abs(&best_val) == std::cmp::Ordering::Less {
                            best = Some((true, i));
                            best_val = x.clone();
                        }
                    }
                    for j in t + 1..n {
                        let x = &self.a[(t, j)];
                        if !x.is_zero() && x.cmp_abs(&best_val) == std::cmp::Ordering::Less {
                            best = Some((false, j));
                            best_val = x.clone();
                        }
                    }
                    match best {
                        Some((true, i)) => self.row_swap(t, i),
                        Some((false, j)) => self.col_swap(t, j),
                        None => {}
                    }
                    continue;
                }
                // divisibility condition on the remaining block
                let p = self.a[(t, t)].clone();
                let mut offender = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if !p.divides(&self.a[(i, j)]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.row_add(t, i, &Int::ONE),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.row_negate(t);
            }
            t += 1;
        }
    }
}

/// Full Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: m.clone(),
        u: Some((IntMatrix::identity(m.nrows()), IntMatrix::identity(m.nrows()))),
        v: Some(IntMatrix::identity(m.ncols())),
    };
    r.run();
    let (u, u_inv) = r.u.expect("tracked");
    SmithForm { u, u_inv, d: r.a, v: r.v.expect("tracked") }
}

/// Smith normal form tracking only the row transform and its inverse.
pub fn smith_left(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<Int>) {
    let mut r =
        Reducer { a: m.clone(), u: Some((IntMatrix::identity(m.nrows()), IntMatrix::identity(m.nrows()))), v: None };
    r.run();
    let n = m.nrows().min(m.ncols());
    let diag = (0..n).map(|i| r.a[(i, i)].clone()).collect();
    let (u, u_inv) = r.u.expect("tracked");
    (u, u_inv, diag)
}

/// Nonzero invariant factors of a dense matrix (no transforms kept).
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let mut r = Reducer { a: m.clone(), u: None, v: None };
    r.run();
    let n = m.nrows().min(m.ncols());
    (0..n).map(|i| r.a[(i, i)].clone()).take_while(|d| !d.is_zero()).collect()
}

/// Nonzero invariant factors of a sparse matrix given by columns.
///
/// Unit pivots are eliminated sparsely first (each contributes a factor 1);
/// whatever remains is densified and handed to the dense reducer.
pub fn sparse_invariant_factors(nrows: usize, cols: &[SparseVec]) -> Vec<Int> {
    let mut cols: Vec<SparseVec> = cols.iter().filter(|c| !c.is_empty()).cloned().collect();
    let mut row_alive = vec![true; nrows];
    let mut units = 0usize;
    loop {
        // row -> columns index over the current state
        let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            for (i, _) in c {
                row_cols[*i].push(j);
            }
        }
        let mut pivot: Option<(usize, usize, usize)> = None; // (cost, col, row)
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c {
                if v.is_unit() {
                    let cost = (c.len() - 1) * (row_cols[*i].len() - 1);
                    if pivot.is_none_or(|(best, _, _)| cost < best) {
                        pivot = Some((cost, j, *i));
                    }
                }
            }
            if matches!(pivot, Some((0, _, _))) {
                break;
            }
        }
        let Some((_, pc, pr)) = pivot else { break };
        let pv = sparse_get(&cols[pc], pr).expect("pivot entry").clone();
        let pivot_col = cols[pc].clone();
        for &j in &row_cols[pr] {
            if j == pc {
                continue;
            }
            let x = sparse_get(&cols[j], pr).expect("indexed").clone();
            // pv is a unit, so pv^{-1} == pv
            let k = -&(&x * &pv);
            cols[j] = sparse_axpy(&cols[j], &k, &pivot_col);
        }
        // row pr now only meets column pc; drop both
        cols.swap_remove(pc);
        for c in cols.iter_mut() {
            c.retain(|(i, _)| *i != pr);
        }
        cols.retain(|c| !c.is_empty());
        row_alive[pr] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&i| row_alive[i]).collect();
    let mut index = vec![usize::MAX; nrows];
    for (k, &i) in live_rows.iter().enumerate() {
        index[i] = k;
    }
    let remapped: Vec<SparseVec> =
        cols.iter().map(|c| c.iter().map(|(i, v)| (index[*i], v.clone())).collect()).collect();
    let dense = IntMatrix::from_sparse_columns(live_rows.len(), &remapped);
    let mut out = vec![Int::ONE; units];
    out.extend(invariant_factors(&dense));
    out
}
