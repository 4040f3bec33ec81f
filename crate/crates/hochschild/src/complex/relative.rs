//! Cochains relative to the vertex idempotents, split along trajectories.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::cochain::{BlockLabel, CochainComplex};
use super::terms::{decode, encode, for_each_term, Tables, WeightInterner};
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{Field, SparseMatrix, SparseVec};
use crate::qset::{assemble_lambda, Lambda, Origin, QSet};
use crate::trajectory::{coefficient, enumerate_paths, path_key, successors, trajectories, Coefficient, QPath, Trajectory};

/// The cochains of one trajectory: `Hom_k(tau_Delta, Delta_w)`.
#[derive(Clone, Debug)]
pub struct Block {
    pub trajectory: Trajectory,
    pub coefficient: Coefficient,
    pub offset: usize,
    pub dim: usize,
    /// Sizes of the tensor factors, left to right.
    pub factor_dims: Vec<usize>,
    /// Where each factor starts in the basis of the assembled algebra.
    pub factor_offsets: Vec<usize>,
    pub coefficient_dim: usize,
    pub coefficient_offset: usize,
}

impl Block {
    pub fn is_cycle(&self) -> bool {
        self.trajectory.path.is_cycle()
    }

    /// Input tuple (assembled algebra indices) and output of a basis cochain.
    pub fn decode(&self, local: usize, tuple: &mut Vec<u32>) -> u32 {
        decode(local / self.coefficient_dim, &self.factor_dims, tuple);
        for (t, o) in tuple.iter_mut().zip(&self.factor_offsets) {
            *t += *o as u32;
        }
        (self.coefficient_offset + local % self.coefficient_dim) as u32
    }
}

/// Blocks of every degree, and where each trajectory sits.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    pub blocks: Vec<Vec<Block>>,
    index: Vec<HashMap<Trajectory, usize>>,
}

impl BlockLayout {
    pub fn find(&self, n: usize, t: &Trajectory) -> Option<&Block> {
        self.index.get(n)?.get(t).map(|k| &self.blocks[n][*k])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.iter().map(|x| x.dim).sum()).collect()
    }

    pub fn labels<F: Field>(&self, delta: &QSet<F>) -> Vec<Vec<BlockLabel>> {
        self.blocks
            .iter()
            .map(|bs| {
                bs.iter()
                    .map(|b| BlockLabel { label: b.trajectory.render(delta.quiver()), offset: b.offset, dim: b.dim })
                    .collect()
            })
            .collect()
    }

    /// Basis indices of degree `n` lying in blocks accepted by `keep`.
    pub fn select(&self, n: usize, keep: impl Fn(&Block) -> bool) -> Vec<usize> {
        self.blocks[n].iter().filter(|b| keep(b)).flat_map(|b| b.offset..b.offset + b.dim).collect()
    }

    /// Block containing the basis index `i` of degree `n`.
    pub fn block_of(&self, n: usize, i: usize) -> &Block {
        let bs = &self.blocks[n];
        let k = bs.partition_point(|b| b.offset + b.dim <= i);
        &bs[k]
    }

    /// Basis index of the cochain with the given input tuple and output.
    pub(crate) fn locate(&self, lambda: &Lambda<impl Field>, n: usize, t: &Trajectory, tuple: &[u32], out: u32) -> Option<usize> {
        let b = self.find(n, t)?;
        if Some(lambda.origin(out as usize)) != b.coefficient.origin() {
            return None;
        }
        let local: Vec<u32> = tuple.iter().map(|z| lambda.local(*z as usize) as u32).collect();
        Some(b.offset + encode(&local, &b.factor_dims) * b.coefficient_dim + lambda.local(out as usize))
    }

    fn from_blocks(blocks: Vec<Vec<Block>>) -> Self {
        let index =
            blocks.iter().map(|bs| bs.iter().enumerate().map(|(k, b)| (b.trajectory.clone(), k)).collect()).collect();
        BlockLayout { blocks, index }
    }
}

fn make_blocks<F: Field>(
    delta: &QSet<F>,
    lambda: &Lambda<F>,
    paths: &[QPath],
    n: usize,
    keep: &dyn Fn(&Trajectory) -> bool,
) -> Vec<Block> {
    let q = delta.quiver();
    let mut out = Vec::new();
    let mut offset = 0;
    for w in paths {
        let c = coefficient(q, w);
        let cdim = c.dim(delta);
        if cdim == 0 {
            continue;
        }
        for t in trajectories(w, n).into_iter().filter(|t| keep(t)) {
            let factors = t.factors(q);
            let factor_dims: Vec<usize> = factors.iter().map(|o| crate::trajectory::factor_dim(delta, *o)).collect();
            let dim = factor_dims.iter().product::<usize>() * cdim;
            if dim == 0 {
                continue;
            }
            let factor_offsets = factors.iter().map(|o| lambda.offset(*o)).collect();
            out.push(Block {
                trajectory: t,
                coefficient: c,
                offset,
                dim,
                factor_dims,
                factor_offsets,
                coefficient_dim: cdim,
                coefficient_offset: lambda.offset(c.origin().unwrap()),
            });
            offset += dim;
        }
    }
    out
}

fn sorted_paths<F: Field>(delta: &QSet<F>, n_max: usize) -> Vec<QPath> {
    let q = delta.quiver();
    let (cycles, noncycles) = enumerate_paths(q, n_max);
    let mut all: Vec<QPath> = cycles.into_iter().chain(noncycles).collect();
    all.sort_by(|a, b| path_key(q, a).cmp(&path_key(q, b)));
    all
}

/// Rows of the coboundary of one basis cochain. `Ok(None)` entries are
/// terms landing outside the layout.
enum RowPolicy<'a> {
    /// Every term must land in a block reached through a successor.
    Strict(&'a HashSet<Trajectory>),
    /// Terms in blocks over other paths are dropped.
    SamePath(&'a QPath),
    /// Terms over another path than the column's, or outside the layout, are dropped.
    Partial,
}

#[allow(clippy::too_many_arguments)]
fn build_column<F: Field>(
    f: &F,
    q: &crate::algebra::Quiver,
    lambda: &Lambda<F>,
    tables: &Tables<F::Elem>,
    layout: &BlockLayout,
    n: usize,
    x: &[u32],
    y: u32,
    policy: &RowPolicy,
    own: &QPath,
    buf: &mut Vec<u32>,
) -> Result<SparseVec<F::Elem>> {
    let mut entries = Vec::new();
    let mut err = None;
    for_each_term(f, tables, x, y, buf, |row, l, c| {
        if err.is_some() {
            return;
        }
        let origins: Vec<Origin> = row.iter().map(|z| lambda.origin(*z as usize)).collect();
        let Some(sigma) = Trajectory::from_factors(q, &origins, None) else {
            err = Some(Error::Internal("nonzero coboundary term on a vanishing tensor".into()));
            return;
        };
        match policy {
            RowPolicy::Strict(succ) => {
                if !succ.contains(&sigma) {
                    err = Some(Error::Internal(format!("coboundary term outside the successors: {}", sigma.render(q))));
                    return;
                }
            }
            RowPolicy::SamePath(w) => {
                if sigma.path != **w {
                    return;
                }
            }
            RowPolicy::Partial => {
                if sigma.path != *own || layout.find(n + 1, &sigma).is_none() {
                    return;
                }
            }
        }
        match layout.locate(lambda, n + 1, &sigma, row, l) {
            Some(r) => entries.push((r as u32, c)),
            None => err = Some(Error::Internal(format!("coboundary term has no block: {}", sigma.render(q)))),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(normalize(f, entries)),
    }
}

enum Assembly<'a> {
    Full,
    SamePath(&'a QPath),
    Partial,
}

fn assemble<F: Field>(
    delta: &QSet<F>,
    lambda: &Lambda<F>,
    layout: &BlockLayout,
    mode: Assembly,
) -> Result<CochainComplex<F>> {
    let f = delta.field();
    let q = delta.quiver();
    let tables = Tables::new(&lambda.algebra);
    let dims = layout.dims();
    let top = dims.len() - 1;
    let mut diffs = Vec::with_capacity(top);
    for n in 0..top {
        let cols: Vec<Result<Vec<SparseVec<F::Elem>>>> = layout.blocks[n]
            .par_iter()
            .map(|b| {
                let succ: HashSet<Trajectory> = successors(q, &b.trajectory).all().cloned().collect();
                let policy = match mode {
                    Assembly::SamePath(w) => RowPolicy::SamePath(w),
                    Assembly::Partial => RowPolicy::Partial,
                    Assembly::Full => RowPolicy::Strict(&succ),
                };
                let mut buf = Vec::new();
                let mut x = Vec::new();
                (0..b.dim)
                    .map(|k| {
                        let y = b.decode(k, &mut x);
                        build_column(f, q, lambda, &tables, layout, n, &x, y, &policy, &b.trajectory.path, &mut buf)
                    })
                    .collect()
            })
            .collect();
        let mut all = Vec::with_capacity(dims[n]);
        for c in cols {
            all.extend(c?);
        }
        diffs.push(SparseMatrix::from_columns(dims[n + 1], all));
    }
    let weights = cochain_weights(lambda, layout);
    CochainComplex::new(f, dims, diffs, Some(weights), Some(layout.labels(delta)))
}

fn cochain_weights<F: Field>(lambda: &Lambda<F>, layout: &BlockLayout) -> Vec<Vec<u32>> {
    let mut wi = WeightInterner::new(&lambda.algebra);
    let mut x = Vec::new();
    layout
        .blocks
        .iter()
        .map(|bs| {
            let mut w = Vec::new();
            for b in bs {
                for k in 0..b.dim {
                    let y = b.decode(k, &mut x);
                    w.push(wi.id(&x, y));
                }
            }
            w
        })
        .collect()
}

/// The relative complex of the assembled algebra of a Q-set.
#[derive(Clone, Debug)]
pub struct RelativeComplex<F: Field> {
    pub complex: CochainComplex<F>,
    pub lambda: Lambda<F>,
    pub layout: BlockLayout,
    pub delta: QSet<F>,
}

/// Builds the relative complex in degrees `0..=n_max + 1`, so that its
/// cohomology is exact up to `n_max`. Each column is generated from the
/// coboundary formula and every term is checked to land in a successor block.
pub fn relative_complex<F: Field>(delta: &QSet<F>, n_max: usize) -> Result<RelativeComplex<F>> {
    let lambda = assemble_lambda(delta)?;
    let top = n_max + 1;
    let paths = sorted_paths(delta, top);
    let blocks = (0..=top).map(|n| make_blocks(delta, &lambda, &paths, n, &|_| true)).collect();
    let layout = BlockLayout::from_blocks(blocks);
    let complex = assemble(delta, &lambda, &layout, Assembly::Full)?;
    Ok(RelativeComplex { complex, lambda, layout, delta: delta.clone() })
}

/// Upper bound on the entries of the relative complex up to degree `n_max + 1`.
pub fn relative_cost<F: Field>(delta: &QSet<F>, n_max: usize) -> Result<u64> {
    let lambda = assemble_lambda(delta)?;
    let top = n_max + 1;
    let paths = sorted_paths(delta, top);
    let d = lambda.algebra.dim() as u64;
    Ok((0..top)
        .map(|n| make_blocks(delta, &lambda, &paths, n, &|_| true).iter().map(|b| b.dim as u64).sum::<u64>() * (n as u64 + 2) * d)
        .sum())
}

/// The same complex with each row of the differential computed directly
/// from the coboundary formula on the full tensor space, without successors.
pub fn relative_complex_naive<F: Field>(delta: &QSet<F>, top: usize) -> Result<CochainComplex<F>> {
    let f = delta.field();
    let q = delta.quiver();
    let lambda = assemble_lambda(delta)?;
    let alg = &lambda.algebra;
    let paths = sorted_paths(delta, top);
    let layout = BlockLayout::from_blocks((0..=top).map(|n| make_blocks(delta, &lambda, &paths, n, &|_| true)).collect());
    let dims = layout.dims();
    let col_of = |n: usize, tuple: &[u32], y: u32| -> Option<usize> {
        let origins: Vec<Origin> = tuple.iter().map(|z| lambda.origin(*z as usize)).collect();
        let empty_at = match lambda.origin(y as usize) {
            Origin::Vertex(v) => Some(v),
            Origin::Arrow(_) => None,
        };
        let tau = Trajectory::from_factors(q, &origins, empty_at)?;
        layout.locate(&lambda, n, &tau, tuple, y)
    };
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut triplets = Vec::new();
        let mut z = Vec::new();
        for b in &layout.blocks[n + 1] {
            for k in 0..b.dim {
                let l = b.decode(k, &mut z);
                let row = b.offset + k;
                // z_1 f(z_2 .. z_{n+1})
                for (y, l2, c) in alg_right(alg, z[0]) {
                    if l2 == l {
                        if let Some(col) = col_of(n, &z[1..], y) {
                            triplets.push((row, col, c));
                        }
                    }
                }
                for i in 1..=n {
                    let merged = alg.mul_basis(z[i - 1] as usize, z[i] as usize);
                    for (m, c) in merged {
                        let mut t: Vec<u32> = z[..i - 1].to_vec();
                        t.push(*m);
                        t.extend_from_slice(&z[i + 1..]);
                        if let Some(col) = col_of(n, &t, l) {
                            let c = if i % 2 == 1 { f.neg(c) } else { c.clone() };
                            triplets.push((row, col, c));
                        }
                    }
                }
                // f(z_1 .. z_n) z_{n+1}
                for y in 0..alg.dim() as u32 {
                    for (l2, c) in alg.mul_basis(y as usize, z[n] as usize) {
                        if *l2 == l {
                            if let Some(col) = col_of(n, &z[..n], y) {
                                let c = if n % 2 == 0 { f.neg(c) } else { c.clone() };
                                triplets.push((row, col, c));
                            }
                        }
                    }
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(f, dims[n + 1], dims[n], triplets));
    }
    let weights = cochain_weights(&lambda, &layout);
    CochainComplex::new(f, dims, diffs, Some(weights), Some(layout.labels(delta)))
}

/// `(y, l, c)` with `z * y = ... + c l`.
fn alg_right<F: Field>(alg: &crate::algebra::FinDimAlgebra<F>, z: u32) -> Vec<(u32, u32, F::Elem)> {
    (0..alg.dim())
        .flat_map(|y| alg.mul_basis(z as usize, y).iter().map(move |(l, c)| (y as u32, *l, c.clone())))
        .collect()
}

/// The non-cycle subcomplex and the cycle quotient of a relative complex.
#[derive(Clone, Debug)]
pub struct NoncycleSplit<F: Field> {
    pub noncycle: CochainComplex<F>,
    pub cycle: CochainComplex<F>,
    /// Per degree, the indices in the full complex of the non-cycle basis.
    pub noncycle_index: Vec<Vec<usize>>,
    pub cycle_index: Vec<Vec<usize>>,
    pub inclusion: Vec<SparseMatrix<F::Elem>>,
    pub projection: Vec<SparseMatrix<F::Elem>>,
}

fn selection<F: Field>(f: &F, ambient: usize, keep: &[usize]) -> SparseMatrix<F::Elem> {
    SparseMatrix::from_columns(ambient, keep.iter().map(|i| vec![(*i as u32, f.one())]).collect())
}

/// Splits off the blocks over non-cycles (a subcomplex) from the blocks over
/// cycles (the quotient, whose differential only moves waiting times).
pub fn split_noncycle<F: Field>(j: &RelativeComplex<F>) -> Result<NoncycleSplit<F>> {
    let f = j.complex.field();
    let q = j.delta.quiver();
    let layout = &j.layout;
    let degrees = 0..=j.complex.top();
    let noncycle_index: Vec<Vec<usize>> = degrees.clone().map(|n| layout.select(n, |b| !b.is_cycle())).collect();
    let cycle_index: Vec<Vec<usize>> = degrees.clone().map(|n| layout.select(n, |b| b.is_cycle())).collect();
    let sublabels = |idx: &Vec<Vec<usize>>, cyc: bool| -> Vec<Vec<BlockLabel>> {
        let mut out = Vec::new();
        for bs in &layout.blocks {
            let mut off = 0;
            let mut ls = Vec::new();
            for b in bs.iter().filter(|b| b.is_cycle() == cyc) {
                ls.push(BlockLabel { label: b.trajectory.render(q), offset: off, dim: b.dim });
                off += b.dim;
            }
            out.push(ls);
        }
        debug_assert!(out.iter().zip(idx).all(|(l, i)| l.iter().map(|b| b.dim).sum::<usize>() == i.len()));
        out
    };
    for n in 0..j.complex.top() {
        let d = j.complex.differential(n);
        for &c in &noncycle_index[n] {
            if d.col(c).iter().any(|(r, _)| layout.block_of(n + 1, *r as usize).is_cycle()) {
                return Err(Error::LiftNotInSubcomplex);
            }
        }
        for &c in &cycle_index[n] {
            let tau = &layout.block_of(n, c).trajectory;
            for (r, _) in d.col(c) {
                let sigma = &layout.block_of(n + 1, *r as usize).trajectory;
                if sigma.path.is_cycle() && sigma.path != tau.path {
                    return Err(Error::Internal("quotient differential leaves the waiting successors".into()));
                }
            }
        }
    }
    let noncycle = j.complex.restrict(&noncycle_index, Some(sublabels(&noncycle_index, false)))?;
    let cycle = j.complex.restrict(&cycle_index, Some(sublabels(&cycle_index, true)))?;
    let dims = j.complex.dims();
    let inclusion: Vec<_> = degrees.clone().map(|n| selection(f, dims[n], &noncycle_index[n])).collect();
    let projection: Vec<_> = degrees.map(|n| selection(f, dims[n], &cycle_index[n]).transpose()).collect();
    for n in 0..j.complex.top() {
        let d = j.complex.differential(n);
        if d.mul(f, &inclusion[n]) != inclusion[n + 1].mul(f, noncycle.differential(n))
            || projection[n + 1].mul(f, d) != cycle.differential(n).mul(f, &projection[n])
        {
            return Err(Error::Internal("block selections are not chain maps".into()));
        }
    }
    Ok(NoncycleSplit { noncycle, cycle, noncycle_index, cycle_index, inclusion, projection })
}

/// The complex of cochains along one path, with only the waiting-time part
/// of the differential, in degrees `0..=n_max + 1`.
pub fn along_path_complex<F: Field>(delta: &QSet<F>, w: &QPath, n_max: usize) -> Result<CochainComplex<F>> {
    let lambda = assemble_lambda(delta)?;
    let top = n_max + 1;
    let blocks = (0..=top).map(|n| make_blocks(delta, &lambda, std::slice::from_ref(w), n, &|_| true)).collect();
    let layout = BlockLayout::from_blocks(blocks);
    assemble(delta, &lambda, &layout, Assembly::SamePath(w))
}

/// The blocks of the trajectories accepted by `keep`, in degrees
/// `0..=top`, with the part of the differential that stays on the path of
/// each column and inside the chosen blocks.
pub fn partial_complex<F: Field>(
    delta: &QSet<F>,
    top: usize,
    keep: impl Fn(&Trajectory) -> bool,
) -> Result<RelativeComplex<F>> {
    let lambda = assemble_lambda(delta)?;
    let paths = sorted_paths(delta, top);
    let blocks = (0..=top).map(|n| make_blocks(delta, &lambda, &paths, n, &keep)).collect();
    let layout = BlockLayout::from_blocks(blocks);
    let complex = assemble(delta, &lambda, &layout, Assembly::Partial)?;
    Ok(RelativeComplex { complex, lambda, layout, delta: delta.clone() })
}
