use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;
use super::sparse::{normalize, Accumulator, SparseMatrix, SparseVec};
use super::subspace::Subspace;
use crate::error::Error;

const NONE: u32 = u32::MAX;

/// Incremental row echelon form with leading pivots.
///
/// Stored rows have their leading entry equal to one and no entry at the
/// leading column of any earlier row. `finish` back-reduces to the reduced
/// row echelon form, which is unique for the spanned subspace.
pub struct Echelon<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<SparseVec<F::Elem>>,
    row_of: Vec<u32>,
    acc: Accumulator<F>,
    queued: Vec<bool>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        Echelon {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            row_of: vec![NONE; ambient],
            acc: Accumulator::new(field, ambient),
            queued: vec![false; ambient],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result has no entry at any pivot column.
    pub fn reduce(&mut self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut heap = BinaryHeap::new();
        for (i, x) in v {
            self.acc.add(f, *i, x);
            if self.row_of[*i as usize] != NONE && !self.queued[*i as usize] {
                self.queued[*i as usize] = true;
                heap.push(Reverse(*i));
            }
        }
        while let Some(Reverse(c)) = heap.pop() {
            self.queued[c as usize] = false;
            let coef = match self.acc.value(c) {
                Some(x) if !f.is_zero(x) => f.neg(x),
                _ => continue,
            };
            let row = &self.rows[self.row_of[c as usize] as usize];
            for (i, x) in row {
                let p = f.mul(&coef, x);
                self.acc.add(f, *i, &p);
                if *i != c && self.row_of[*i as usize] != NONE && !self.queued[*i as usize] {
                    self.queued[*i as usize] = true;
                    heap.push(Reverse(*i));
                }
            }
        }
        self.acc.drain(f)
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[(u32, F::Elem)]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let f = &self.field;
        let lead = r[0].0;
        let inv = f.inv(&r[0].1);
        let row: SparseVec<F::Elem> = r.into_iter().map(|(i, x)| (i, f.mul(&inv, &x))).collect();
        self.row_of[lead as usize] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    /// Reduced row echelon basis, sorted by pivot.
    pub fn finish(self) -> Subspace<F::Elem> {
        let f = self.field;
        let row_of = self.row_of;
        let mut rows = self.rows;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&k| rows[k][0].0);
        // back-substitution from the largest pivot down
        let mut done: Vec<Option<SparseVec<F::Elem>>> = vec![None; rows.len()];
        for &k in order.iter().rev() {
            let row = std::mem::take(&mut rows[k]);
            let lead = row[0].0;
            let mut entries: Vec<(u32, F::Elem)> = Vec::with_capacity(row.len());
            let mut subs: Vec<(usize, F::Elem)> = Vec::new();
            for (i, x) in &row {
                let r = row_of[*i as usize];
                if *i != lead && r != NONE {
                    subs.push((r as usize, x.clone()));
                } else {
                    entries.push((*i, x.clone()));
                }
            }
            for (r, c) in subs {
                let other = done[r].as_ref().expect("rows reduced in pivot order");
                let neg = f.neg(&c);
                for (i, x) in other {
                    if row_of[*i as usize] == NONE {
                        entries.push((*i, f.mul(&neg, x)));
                    }
                }
            }
            done[k] = Some(normalize(&f, entries));
        }
        let basis: Vec<SparseVec<F::Elem>> = order.iter().map(|&k| done[k].take().unwrap()).collect();
        Subspace::from_reduced(self.ambient, basis)
    }
}

/// Column elimination for ranks of large sparse matrices.
///
/// Each incoming column is reduced against the stored pivot columns in
/// insertion order; a surviving column takes as pivot the row that occurs in
/// the fewest original columns (ties broken by row index).
pub struct ColumnReducer<F: Field> {
    field: F,
    row_weight: Vec<u32>,
    pivot_of_row: Vec<u32>,
    stored: Vec<(u32, SparseVec<F::Elem>)>,
    acc: Accumulator<F>,
    queued: Vec<bool>,
}

impl<F: Field> ColumnReducer<F> {
    pub fn new(field: &F, nrows: usize, row_weight: Vec<u32>) -> Self {
        assert_eq!(row_weight.len(), nrows);
        ColumnReducer {
            field: field.clone(),
            row_weight,
            pivot_of_row: vec![NONE; nrows],
            stored: Vec::new(),
            acc: Accumulator::new(field, nrows),
            queued: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    pub fn push(&mut self, col: &[(u32, F::Elem)]) -> bool {
        let f = &self.field;
        let mut heap = BinaryHeap::new();
        for (i, x) in col {
            self.acc.add(f, *i, x);
            let p = self.pivot_of_row[*i as usize];
            if p != NONE && !self.queued[p as usize] {
                self.queued[p as usize] = true;
                heap.push(Reverse(p));
            }
        }
        while let Some(Reverse(p)) = heap.pop() {
            self.queued[p as usize] = false;
            let (prow, ref pcol) = self.stored[p as usize];
            let coef = match self.acc.value(prow) {
                Some(x) if !f.is_zero(x) => f.neg(x),
                _ => continue,
            };
            for (i, x) in pcol {
                let v = f.mul(&coef, x);
                self.acc.add(f, *i, &v);
                let q = self.pivot_of_row[*i as usize];
                if q != NONE && q != p && !self.queued[q as usize] {
                    self.queued[q as usize] = true;
                    heap.push(Reverse(q));
                }
            }
        }
        let r = self.acc.drain(f);
        if r.is_empty() {
            return false;
        }
        let (best, _) = r
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, _))| (self.row_weight[*i as usize], *i))
            .unwrap();
        let prow = r[best].0;
        let inv = f.inv(&r[best].1);
        let col: SparseVec<F::Elem> = r.into_iter().map(|(i, x)| (i, f.mul(&inv, &x))).collect();
        self.pivot_of_row[prow as usize] = self.stored.len() as u32;
        self.stored.push((prow, col));
        self.queued.push(false);
        true
    }
}

/// Exact rank.
pub fn rank<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let mut weight = vec![0u32; m.nrows()];
    for c in m.columns() {
        for (i, _) in c {
            weight[*i as usize] += 1;
        }
    }
    let mut order: Vec<usize> = (0..m.ncols()).filter(|&j| !m.col(j).is_empty()).collect();
    order.sort_by_key(|&j| (m.col(j).len(), j));
    let mut red = ColumnReducer::new(f, m.nrows(), weight);
    for j in order {
        red.push(m.col(j));
        if red.rank() == m.nrows() {
            break;
        }
    }
    red.rank()
}

/// Reduced row echelon basis of the row space of `m`.
pub fn row_space<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    let t = m.transpose();
    column_space(f, &t)
}

/// Reduced echelon basis of the span of the columns of `m`.
pub fn column_space<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    let mut e = Echelon::new(f, m.nrows());
    for c in m.columns() {
        e.insert(c);
    }
    e.finish()
}

/// Null space of `m`, in reduced echelon form.
pub fn kernel_basis<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    let n = m.ncols();
    if n == 0 {
        return Subspace::zero(0);
    }
    // Row-reduce with pivots on the trailing columns; the resulting kernel
    // vectors are then already in leading reduced echelon form.
    let rev = |c: u32| (n as u32 - 1) - c;
    let t = m.transpose();
    let mut e = Echelon::new(f, n);
    for row in t.columns() {
        if row.is_empty() {
            continue;
        }
        let mut r: SparseVec<F::Elem> = row.iter().map(|(i, x)| (rev(*i), x.clone())).collect();
        r.reverse();
        e.insert(&r);
        if e.rank() == n {
            break;
        }
    }
    let reduced = e.finish();
    let mut is_pivot = vec![false; n];
    for &p in reduced.pivots() {
        is_pivot[p as usize] = true;
    }
    let mut kernel: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); n];
    for (row, &p) in reduced.basis().iter().zip(reduced.pivots()) {
        for (j, x) in row {
            if *j != p {
                kernel[*j as usize].push((rev(p), f.neg(x)));
            }
        }
    }
    let mut basis = Vec::new();
    for j in (0..n as u32).rev() {
        if is_pivot[j as usize] {
            continue;
        }
        let mut v = std::mem::take(&mut kernel[j as usize]);
        v.push((rev(j), f.one()));
        v.sort_by_key(|e| e.0);
        basis.push(v);
    }
    Subspace::from_reduced(n, basis)
}

/// Solution space of `constraints * x = 0`.
pub fn solve_homogeneous<F: Field>(f: &F, constraints: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    kernel_basis(f, constraints)
}

/// `dim ker(d_out) - rank(d_in)`, after checking `d_out * d_in = 0`.
pub fn homology_dim<F: Field>(
    f: &F,
    d_out: &SparseMatrix<F::Elem>,
    d_in: &SparseMatrix<F::Elem>,
) -> Result<usize, Error> {
    if d_out.ncols() != d_in.nrows() {
        return Err(Error::Input(format!(
            "cannot compose {}x{} after {}x{}",
            d_out.nrows(),
            d_out.ncols(),
            d_in.nrows(),
            d_in.ncols()
        )));
    }
    if !d_out.mul(f, d_in).is_zero() {
        return Err(Error::CompositionNotZero);
    }
    Ok(d_out.ncols() - rank(f, d_out) - rank(f, d_in))
}
