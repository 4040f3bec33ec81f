//! The Hochschild cochain complex over the ground field, used as an oracle.

use std::collections::HashMap;

use rayon::prelude::*;

use super::cochain::{block_rank, CochainComplex};
use super::terms::{decode, encode, for_each_term, Tables, WeightInterner};
use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{Field, SparseMatrix, SparseVec};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Matrix entries touched when building the differentials up to degree `top`.
pub fn bar_cost(dim: usize, top: usize) -> u64 {
    let d = dim as u128;
    let total: u128 = (0..top).map(|n| d.pow(n as u32 + 1) * (n as u128 + 2) * d).sum();
    total.min(u64::MAX as u128) as u64
}

fn check_budget(dim: usize, top: usize, budget: u64) -> Result<()> {
    let required = bar_cost(dim, top);
    if required > budget || (dim as u128).pow(top as u32 + 1) > u32::MAX as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Column of the differential of degree `n` at the basis cochain `col`.
fn column<F: Field>(f: &F, t: &Tables<F::Elem>, d: usize, n: usize, col: usize, buf: &mut Vec<u32>) -> Vec<(u32, F::Elem)> {
    let mut x = Vec::new();
    decode(col / d, &vec![d; n], &mut x);
    let y = (col % d) as u32;
    let sizes = vec![d; n + 1];
    let mut out = Vec::new();
    for_each_term(f, t, &x, y, buf, |row, l, c| {
        out.push(((encode(row, &sizes) * d + l as usize) as u32, c));
    });
    normalize(f, out)
}

fn weight_groups<F: Field>(alg: &FinDimAlgebra<F>, n: usize) -> Vec<Vec<u32>> {
    let d = alg.dim();
    let mut wi = WeightInterner::new(alg);
    let mut groups: Vec<Vec<u32>> = Vec::new();
    let mut x = Vec::new();
    let sizes = vec![d; n];
    for col in 0..d.pow(n as u32 + 1) {
        decode(col / d, &sizes, &mut x);
        let id = wi.id(&x, (col % d) as u32) as usize;
        if id == groups.len() {
            groups.push(Vec::new());
        }
        groups[id].push(col as u32);
    }
    groups
}

/// Hochschild cohomology dimensions of `alg` with coefficients in itself,
/// degrees `0..=n_max`, from the standard cochain complex. The differentials
/// are never stored: each weight block is generated and reduced on its own.
pub fn bar_hochschild<F: Field>(alg: &FinDimAlgebra<F>, n_max: usize, budget: u64) -> Result<Vec<usize>> {
    let d = alg.dim();
    check_budget(d, n_max + 1, budget)?;
    let f = alg.field();
    let t = Tables::new(alg);
    let ranks: Vec<usize> = (0..=n_max)
        .map(|n| {
            weight_groups(alg, n)
                .into_par_iter()
                .map(|cols| {
                    let mut buf = Vec::new();
                    let global: Vec<SparseVec<F::Elem>> =
                        cols.iter().map(|c| column(f, &t, d, n, *c as usize, &mut buf)).collect();
                    let mut rows: Vec<u32> = global.iter().flat_map(|c| c.iter().map(|e| e.0)).collect();
                    rows.sort_unstable();
                    rows.dedup();
                    let pos: HashMap<u32, u32> = rows.iter().enumerate().map(|(k, r)| (*r, k as u32)).collect();
                    let local = global.into_iter().map(|c| c.into_iter().map(|(i, x)| (pos[&i], x)).collect()).collect();
                    block_rank(f, rows.len(), local)
                })
                .sum()
        })
        .collect();
    Ok((0..=n_max)
        .map(|n| d.pow(n as u32 + 1) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect())
}

/// The standard cochain complex in degrees `0..=top`, stored in full.
pub fn bar_complex<F: Field>(alg: &FinDimAlgebra<F>, top: usize, budget: u64) -> Result<CochainComplex<F>> {
    let d = alg.dim();
    check_budget(d, top, budget)?;
    let f = alg.field();
    let t = Tables::new(alg);
    let dims: Vec<usize> = (0..=top).map(|n| d.pow(n as u32 + 1)).collect();
    let diffs = (0..top)
        .map(|n| {
            let cols = (0..dims[n])
                .into_par_iter()
                .map_init(Vec::new, |buf, c| column(f, &t, d, n, c, buf))
                .collect();
            SparseMatrix::from_columns(dims[n + 1], cols)
        })
        .collect();
    let mut wi = WeightInterner::new(alg);
    let mut x = Vec::new();
    let weights = (0..=top)
        .map(|n| {
            (0..dims[n])
                .map(|c| {
                    decode(c / d, &vec![d; n], &mut x);
                    wi.id(&x, (c % d) as u32)
                })
                .collect()
        })
        .collect();
    CochainComplex::new(f, dims, diffs, Some(weights), None)
}
