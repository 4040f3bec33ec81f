use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{column_space, kernel_basis, ColumnReducer, Field, SparseMatrix, SparseVec, Subspace};

/// A labelled range of basis vectors in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLabel {
    pub label: String,
    pub offset: usize,
    pub dim: usize,
}

/// A finite cochain complex `C^0 -> C^1 -> ... -> C^top`.
///
/// Every basis vector carries a weight and every differential maps a basis
/// vector into the span of basis vectors of the same weight, so ranks and
/// kernels split over weights.
#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix<F::Elem>>,
    weights: Vec<Vec<u32>>,
    labels: Vec<Vec<BlockLabel>>,
}

impl<F: Field> CochainComplex<F> {
    /// `diffs[n]` maps degree `n` to degree `n + 1`. Missing weights mean a
    /// single weight. Checks that consecutive differentials compose to zero.
    pub fn new(
        field: &F,
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix<F::Elem>>,
        weights: Option<Vec<Vec<u32>>>,
        labels: Option<Vec<Vec<BlockLabel>>>,
    ) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::Internal("a complex needs one differential between consecutive degrees".into()));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.ncols() != dims[n] || d.nrows() != dims[n + 1] {
                return Err(Error::Internal(format!("differential {} has the wrong shape", n)));
            }
        }
        let weights = weights.unwrap_or_else(|| dims.iter().map(|d| vec![0; *d]).collect());
        if weights.len() != dims.len() || weights.iter().zip(&dims).any(|(w, d)| w.len() != *d) {
            return Err(Error::Internal("weights do not match the spaces".into()));
        }
        let labels = labels.unwrap_or_else(|| {
            dims.iter().map(|d| vec![BlockLabel { label: "all".into(), offset: 0, dim: *d }]).collect()
        });
        let c = CochainComplex { field: field.clone(), dims, diffs, weights, labels };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        let f = &self.field;
        let bad = self.diffs.par_windows(2).any(|w| !w[1].mul(f, &w[0]).is_zero());
        if bad {
            return Err(Error::CompositionNotZero);
        }
        for (n, d) in self.diffs.iter().enumerate() {
            for (j, col) in d.columns().iter().enumerate() {
                let w = self.weights[n][j];
                if col.iter().any(|(i, _)| self.weights[n + 1][*i as usize] != w) {
                    return Err(Error::Internal(format!("differential {} does not preserve weights", n)));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Highest degree with a space.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix<F::Elem> {
        &self.diffs[n]
    }

    pub fn differentials(&self) -> &[SparseMatrix<F::Elem>] {
        &self.diffs
    }

    pub fn weights(&self, n: usize) -> &[u32] {
        &self.weights[n]
    }

    pub fn labels(&self, n: usize) -> &[BlockLabel] {
        &self.labels[n]
    }

    /// Applies the differential of degree `n`.
    pub fn apply(&self, n: usize, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        self.diffs[n].mul_vec(&self.field, v)
    }

    fn groups(&self, n: usize) -> Vec<Vec<u32>> {
        group_by_weight(&self.weights[n])
    }

    /// Rank of the differential of degree `n`.
    pub fn rank(&self, n: usize) -> usize {
        graded_rank(&self.field, &self.diffs[n], &self.groups(n))
    }

    /// Cocycles of degree `n`; degree `top` has no outgoing differential here.
    pub fn cocycles(&self, n: usize) -> Subspace<F::Elem> {
        if n == self.top() {
            return Subspace::full(&self.field, self.dims[n]);
        }
        graded_kernel(&self.field, &self.diffs[n], &self.groups(n))
    }

    pub fn coboundaries(&self, n: usize) -> Subspace<F::Elem> {
        if n == 0 {
            return Subspace::zero(self.dims[0]);
        }
        graded_image(&self.field, &self.diffs[n - 1], &self.groups(n - 1), &self.weights[n])
    }

    /// Cohomology dimensions in degrees `0..top` (the top degree is left out:
    /// its cocycles are unknown).
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.top()).into_par_iter().map(|n| self.rank(n)).collect();
        (0..self.top())
            .map(|n| self.dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect()
    }

    /// Dimensions and representatives in degrees `0..top`.
    pub fn cohomology(&self) -> CohomologyResult<F::Elem> {
        let f = &self.field;
        let per: Vec<(Subspace<F::Elem>, Subspace<F::Elem>, Subspace<F::Elem>)> = (0..self.top())
            .into_par_iter()
            .map(|n| {
                let z = self.cocycles(n);
                let b = self.coboundaries(n);
                let reps = complement(f, &z, &b);
                (z, b, reps)
            })
            .collect();
        let mut res = CohomologyResult { dims: Vec::new(), cocycles: Vec::new(), coboundaries: Vec::new(), representatives: Vec::new() };
        for (z, b, r) in per {
            res.dims.push(r.dim());
            res.cocycles.push(z);
            res.coboundaries.push(b);
            res.representatives.push(r);
        }
        res
    }

    /// The subcomplex or quotient on the given basis vectors of each degree,
    /// with differential the corresponding block of the differentials.
    pub fn restrict(&self, keep: &[Vec<usize>], labels: Option<Vec<Vec<BlockLabel>>>) -> Result<Self> {
        let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
        let maps: Vec<Vec<Option<u32>>> = keep
            .iter()
            .enumerate()
            .map(|(n, k)| {
                let mut m = vec![None; self.dims[n]];
                for (i, g) in k.iter().enumerate() {
                    m[*g] = Some(i as u32);
                }
                m
            })
            .collect();
        let diffs = (0..dims.len() - 1)
            .map(|n| self.diffs[n].select_columns(&keep[n]).remap_rows(&maps[n + 1], dims[n + 1]))
            .collect();
        let weights = keep.iter().enumerate().map(|(n, k)| k.iter().map(|g| self.weights[n][*g]).collect()).collect();
        CochainComplex::new(&self.field, dims, diffs, Some(weights), labels)
    }
}

/// Cohomology with cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyResult<E> {
    pub dims: Vec<usize>,
    pub cocycles: Vec<Subspace<E>>,
    pub coboundaries: Vec<Subspace<E>>,
    /// Reduced echelon basis of a complement of the coboundaries inside the cocycles.
    pub representatives: Vec<Subspace<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static> CohomologyResult<E> {
    /// Coordinates of the class of a cocycle in the basis of representatives.
    pub fn class_coords<F: Field<Elem = E>>(&self, f: &F, n: usize, v: &[(u32, E)]) -> SparseVec<E> {
        let r = self.coboundaries[n].reduce(f, v);
        self.representatives[n].coords(&r)
    }

    pub fn is_coboundary<F: Field<Elem = E>>(&self, f: &F, n: usize, v: &[(u32, E)]) -> bool {
        self.coboundaries[n].contains(f, v)
    }

    pub fn is_cocycle<F: Field<Elem = E>>(&self, f: &F, n: usize, v: &[(u32, E)]) -> bool {
        self.cocycles[n].contains(f, v)
    }
}

/// Reduced echelon basis of `z` modulo `b`: every vector of `z` reduced
/// against `b`, then row reduced. Spans a complement of `b` in `z` when `b`
/// is inside `z`.
pub fn complement<F: Field>(f: &F, z: &Subspace<F::Elem>, b: &Subspace<F::Elem>) -> Subspace<F::Elem> {
    let reduced: Vec<SparseVec<F::Elem>> = z.basis().iter().map(|v| b.reduce(f, v)).collect();
    Subspace::from_spanning(f, z.ambient_dim(), &reduced)
}

/// Indices of basis vectors grouped by weight, groups in order of first appearance.
pub fn group_by_weight(weights: &[u32]) -> Vec<Vec<u32>> {
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut groups: Vec<Vec<u32>> = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        let g = *index.entry(*w).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i as u32);
    }
    groups
}

/// The columns of a group and its rows, renumbered locally.
fn local_block<E: Clone + PartialEq + std::fmt::Debug>(
    d: &SparseMatrix<E>,
    cols: &[u32],
) -> (Vec<u32>, Vec<SparseVec<E>>) {
    let mut rows: Vec<u32> = cols.iter().flat_map(|c| d.col(*c as usize).iter().map(|(i, _)| *i)).collect();
    rows.sort_unstable();
    rows.dedup();
    let pos: HashMap<u32, u32> = rows.iter().enumerate().map(|(k, r)| (*r, k as u32)).collect();
    let local = cols
        .iter()
        .map(|c| d.col(*c as usize).iter().map(|(i, x)| (pos[i], x.clone())).collect())
        .collect();
    (rows, local)
}

pub fn graded_rank<F: Field>(f: &F, d: &SparseMatrix<F::Elem>, groups: &[Vec<u32>]) -> usize {
    groups
        .par_iter()
        .map(|cols| {
            let (rows, local) = local_block(d, cols);
            block_rank(f, rows.len(), local)
        })
        .sum()
}

/// Rank of the matrix with the given columns.
pub fn block_rank<F: Field>(f: &F, nrows: usize, mut cols: Vec<SparseVec<F::Elem>>) -> usize {
    if nrows == 0 {
        return 0;
    }
    let mut weight = vec![0u32; nrows];
    for c in &cols {
        for (i, _) in c {
            weight[*i as usize] += 1;
        }
    }
    cols.retain(|c| !c.is_empty());
    cols.sort_by_key(|c| c.len());
    let mut red = ColumnReducer::new(f, nrows, weight);
    for c in &cols {
        red.push(c);
        if red.rank() == nrows {
            break;
        }
    }
    red.rank()
}

pub fn graded_kernel<F: Field>(f: &F, d: &SparseMatrix<F::Elem>, groups: &[Vec<u32>]) -> Subspace<F::Elem> {
    let parts: Vec<Vec<SparseVec<F::Elem>>> = groups
        .par_iter()
        .map(|cols| {
            let (rows, local) = local_block(d, cols);
            let m = SparseMatrix::from_columns(rows.len(), local);
            let k = kernel_basis(f, &m);
            k.basis()
                .iter()
                .map(|v| v.iter().map(|(j, x)| (cols[*j as usize], x.clone())).collect())
                .collect()
        })
        .collect();
    assemble(d.ncols(), parts)
}

pub fn graded_image<F: Field>(
    f: &F,
    d: &SparseMatrix<F::Elem>,
    groups: &[Vec<u32>],
    _target_weights: &[u32],
) -> Subspace<F::Elem> {
    let parts: Vec<Vec<SparseVec<F::Elem>>> = groups
        .par_iter()
        .map(|cols| {
            let (rows, local) = local_block(d, cols);
            let m = SparseMatrix::from_columns(rows.len(), local);
            let im = column_space(f, &m);
            im.basis()
                .iter()
                .map(|v| v.iter().map(|(i, x)| (rows[*i as usize], x.clone())).collect())
                .collect()
        })
        .collect();
    assemble(d.nrows(), parts)
}

/// Union of reduced echelon bases with disjoint supports, sorted by pivot.
fn assemble<E: Clone + PartialEq + std::fmt::Debug>(ambient: usize, parts: Vec<Vec<SparseVec<E>>>) -> Subspace<E> {
    let mut all: Vec<SparseVec<E>> = parts.into_iter().flatten().collect();
    all.sort_by_key(|v| v[0].0);
    Subspace::from_reduced(ambient, all)
}
