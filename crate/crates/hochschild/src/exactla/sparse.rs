use super::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// `x + c * y`
pub fn axpy<F: Field>(f: &F, x: &[(u32, F::Elem)], c: &F::Elem, y: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        let (xi, yi) = (x[i].0, y[j].0);
        if xi < yi {
            out.push(x[i].clone());
            i += 1;
        } else if yi < xi {
            let v = f.mul(c, &y[j].1);
            if !f.is_zero(&v) {
                out.push((yi, v));
            }
            j += 1;
        } else {
            let v = f.add(&x[i].1, &f.mul(c, &y[j].1));
            if !f.is_zero(&v) {
                out.push((xi, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    for (k, v) in &y[j..] {
        let v = f.mul(c, v);
        if !f.is_zero(&v) {
            out.push((*k, v));
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, x: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, f.mul(c, v))).collect()
}

pub fn get<'a, E>(x: &'a [(u32, E)], idx: u32) -> Option<&'a E> {
    x.binary_search_by_key(&idx, |e| e.0).ok().map(|p| &x[p].1)
}

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize<F: Field>(f: &F, mut entries: Vec<(u32, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(&last.1, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !f.is_zero(v));
    out
}

pub fn dense_to_sparse<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(f: &F, v: &[(u32, F::Elem)], n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (i, x) in v {
        out[*i as usize] = x.clone();
    }
    out
}

/// Dense scratch space for accumulating sparse linear combinations.
pub struct Accumulator<F: Field> {
    vals: Vec<F::Elem>,
    live: Vec<bool>,
    touched: Vec<u32>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(f: &F, n: usize) -> Self {
        Accumulator { vals: vec![f.zero(); n], live: vec![false; n], touched: Vec::new() }
    }

    pub fn add(&mut self, f: &F, i: u32, v: &F::Elem) {
        let k = i as usize;
        if self.live[k] {
            self.vals[k] = f.add(&self.vals[k], v);
        } else {
            self.live[k] = true;
            self.vals[k] = v.clone();
            self.touched.push(i);
        }
    }

    pub fn add_scaled(&mut self, f: &F, c: &F::Elem, x: &[(u32, F::Elem)]) {
        for (i, v) in x {
            let p = f.mul(c, v);
            self.add(f, *i, &p);
        }
    }

    pub fn value(&self, i: u32) -> Option<&F::Elem> {
        if self.live[i as usize] {
            Some(&self.vals[i as usize])
        } else {
            None
        }
    }

    /// Empties the accumulator and returns its contents as a sparse vector.
    pub fn drain(&mut self, f: &F) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let k = i as usize;
            self.live[k] = false;
            let v = std::mem::replace(&mut self.vals[k], f.zero());
            if !f.is_zero(&v) {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> SparseMatrix<E> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from columns; each column must already be a valid sparse vector.
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<E>>) -> Self {
        for c in &cols {
            debug_assert!(c.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(c.last().map_or(true, |e| (e.0 as usize) < nrows));
        }
        let ncols = cols.len();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &[(u32, E)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec<E>> {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        get(&self.cols[c], r as u32)
    }

    /// All entries as (row, col, value), column by column.
    pub fn triplets(&self) -> Vec<(usize, usize, E)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                out.push((*i as usize, j, v.clone()));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec<E>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                rows[*i as usize].push((j as u32, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols: rows }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        SparseMatrix {
            nrows: self.nrows,
            ncols: cols.len(),
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Restricts rows through a map old row -> new row (None drops the row).
    pub fn remap_rows(&self, map: &[Option<u32>], new_nrows: usize) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut v: SparseVec<E> =
                    c.iter().filter_map(|(i, x)| map[*i as usize].map(|k| (k, x.clone()))).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        SparseMatrix { nrows: new_nrows, ncols: self.ncols, cols }
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> SparseMatrix<E> {
    pub fn from_triplets<F: Field<Elem = E>>(
        f: &F,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Self {
        let mut cols: Vec<Vec<(u32, E)>> = vec![Vec::new(); ncols];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "entry ({}, {}) out of range", i, j);
            cols[j].push((i as u32, v));
        }
        let cols = cols.into_iter().map(|c| normalize(f, c)).collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, cols: (0..n).map(|i| vec![(i as u32, f.one())]).collect() }
    }

    pub fn from_dense<F: Field<Elem = E>>(f: &F, rows: &[Vec<E>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(f, nrows, ncols, entries.collect::<Vec<_>>())
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![f.zero(); self.ncols]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                out[*i as usize][j] = v.clone();
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, x: &[(u32, E)]) -> SparseVec<E> {
        let mut acc = Accumulator::new(f, self.nrows);
        for (j, c) in x {
            acc.add_scaled(f, c, &self.cols[*j as usize]);
        }
        acc.drain(f)
    }

    /// `self * other`
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut acc = Accumulator::new(f, self.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                for (j, v) in c {
                    acc.add_scaled(f, v, &self.cols[*j as usize]);
                }
                acc.drain(f)
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, cols }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add_scaled(f, &f.one(), other)
    }

    /// `self + c * other`
    pub fn add_scaled<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| axpy(f, a, c, b)).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let cols = self.cols.iter().map(|a| scale(f, c, a)).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    /// Places `blocks` side by side.
    pub fn hstack(nrows: usize, blocks: &[&Self]) -> Self {
        let mut cols = Vec::new();
        for b in blocks {
            assert_eq!(b.nrows, nrows);
            cols.extend(b.cols.iter().cloned());
        }
        let ncols = cols.len();
        SparseMatrix { nrows, ncols, cols }
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(ncols: usize, blocks: &[&Self]) -> Self {
        let mut cols: Vec<SparseVec<E>> = vec![Vec::new(); ncols];
        let mut off = 0u32;
        for b in blocks {
            assert_eq!(b.ncols, ncols);
            for (j, c) in b.cols.iter().enumerate() {
                cols[j].extend(c.iter().map(|(i, v)| (i + off, v.clone())));
            }
            off += b.nrows as u32;
        }
        SparseMatrix { nrows: off as usize, ncols, cols }
    }
}
