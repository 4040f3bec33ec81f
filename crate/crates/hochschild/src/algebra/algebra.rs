use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::sparse::{normalize, Accumulator};
use crate::exactla::{kernel_basis, Field, Rationals, SparseMatrix, SparseVec, Subspace};

/// A finite dimensional associative unital algebra given by structure
/// constants, together with a system of orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    table: Vec<SparseVec<F::Elem>>,
    unit: SparseVec<F::Elem>,
    system: Vec<SparseVec<F::Elem>>,
    system_labels: Vec<String>,
    corners: Option<Vec<(usize, usize)>>,
}

impl<F: Field> PartialEq for FinDimAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.labels.len() == other.labels.len()
            && self.table == other.table
            && self.unit == other.unit
            && self.system == other.system
    }
}

impl<F: Field> FinDimAlgebra<F> {
    /// Validates and builds. `table[i * dim + j]` holds the coordinates of
    /// `b_i * b_j`. An empty system defaults to `{1}`.
    pub fn from_structure_constants(
        field: &F,
        labels: Vec<String>,
        table: Vec<SparseVec<F::Elem>>,
        unit: SparseVec<F::Elem>,
        system: Vec<SparseVec<F::Elem>>,
        system_labels: Vec<String>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::Input(format!(
                "structure table has {} entries, expected {}",
                table.len(),
                dim * dim
            )));
        }
        let check = |v: &SparseVec<F::Elem>, what: &str| -> Result<()> {
            if v.iter().any(|(i, _)| *i as usize >= dim)
                || v.windows(2).any(|w| w[0].0 >= w[1].0)
                || v.iter().any(|(_, x)| field.is_zero(x))
            {
                return Err(Error::Input(format!("malformed coordinate vector in {}", what)));
            }
            Ok(())
        };
        for v in &table {
            check(v, "structure constants")?;
        }
        check(&unit, "unit")?;
        let (system, system_labels) = if system.is_empty() {
            (vec![unit.clone()], vec!["1".to_string()])
        } else {
            (system, system_labels)
        };
        if system.len() != system_labels.len() {
            return Err(Error::Input("system labels do not match system".into()));
        }
        for v in &system {
            check(v, "system")?;
        }
        let mut a = FinDimAlgebra {
            field: field.clone(),
            labels,
            table,
            unit,
            system,
            system_labels,
            corners: None,
        };
        a.validate()?;
        a.corners = a.compute_corners();
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let f = &self.field;
        let dim = self.dim();
        let bad = (0..dim).into_par_iter().find_map_any(|i| {
            for j in 0..dim {
                let ij = &self.table[i * dim + j];
                for l in 0..dim {
                    let left = self.mul(ij, &[(l as u32, f.one())]);
                    let right = self.mul(&[(i as u32, f.one())], &self.table[j * dim + l]);
                    if left != right {
                        return Some((i, j, l));
                    }
                }
            }
            None
        });
        if let Some((i, j, l)) = bad {
            return Err(Error::NotAssociative(
                self.labels[i].clone(),
                self.labels[j].clone(),
                self.labels[l].clone(),
            ));
        }
        for i in 0..dim {
            let b = vec![(i as u32, f.one())];
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::BadUnit(format!("unit does not fix {}", self.labels[i])));
            }
        }
        let mut total = Vec::new();
        for (k, e) in self.system.iter().enumerate() {
            if self.mul(e, e) != *e {
                return Err(Error::BadSystem(format!("{} is not idempotent", self.system_labels[k])));
            }
            for (l, g) in self.system.iter().enumerate() {
                if k != l && !self.mul(e, g).is_empty() {
                    return Err(Error::BadSystem(format!(
                        "{} and {} are not orthogonal",
                        self.system_labels[k], self.system_labels[l]
                    )));
                }
            }
            total.extend(e.iter().cloned());
        }
        if normalize(f, total) != self.unit {
            return Err(Error::BadSystem("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    fn compute_corners(&self) -> Option<Vec<(usize, usize)>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let b = vec![(i as u32, f.one())];
            let mut found = None;
            'search: for (y, ey) in self.system.iter().enumerate() {
                let left = self.mul(ey, &b);
                if left != b {
                    continue;
                }
                for (x, ex) in self.system.iter().enumerate() {
                    if self.mul(&b, ex) == b {
                        found = Some((y, x));
                        break 'search;
                    }
                }
            }
            out.push(found?);
        }
        Some(out)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &SparseVec<F::Elem> {
        &self.unit
    }

    pub fn system(&self) -> &[SparseVec<F::Elem>] {
        &self.system
    }

    pub fn system_labels(&self) -> &[String] {
        &self.system_labels
    }

    pub fn system_index(&self, label: &str) -> Option<usize> {
        self.system_labels.iter().position(|l| l == label)
    }

    /// For each basis element, the pair (target, source) of system indices
    /// with `e_target * b * e_source = b`, when every basis element is
    /// homogeneous for the system.
    pub fn corners(&self) -> Option<&[(usize, usize)]> {
        self.corners.as_deref()
    }

    /// `b_i * b_j`
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i * self.dim() + j]
    }

    pub fn table(&self) -> &[SparseVec<F::Elem>] {
        &self.table
    }

    pub fn mul(&self, x: &[(u32, F::Elem)], y: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut entries = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = f.mul(a, b);
                for (k, c) in self.mul_basis(*i as usize, *j as usize) {
                    entries.push((*k, f.mul(&ab, c)));
                }
            }
        }
        normalize(f, entries)
    }

    /// Matrix of `v -> x * v`.
    pub fn left_mult_matrix(&self, x: &[(u32, F::Elem)]) -> SparseMatrix<F::Elem> {
        let f = &self.field;
        let cols = (0..self.dim()).map(|j| self.mul(x, &[(j as u32, f.one())])).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// Matrix of `v -> v * x`.
    pub fn right_mult_matrix(&self, x: &[(u32, F::Elem)]) -> SparseMatrix<F::Elem> {
        let f = &self.field;
        let cols = (0..self.dim()).map(|j| self.mul(&[(j as u32, f.one())], x)).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// The subspace `y * A * x`.
    pub fn corner_space(&self, y: &[(u32, F::Elem)], x: &[(u32, F::Elem)]) -> Subspace<F::Elem> {
        let f = &self.field;
        let vecs: Vec<SparseVec<F::Elem>> =
            (0..self.dim()).map(|j| self.mul(&self.mul(y, &[(j as u32, f.one())]), x)).collect();
        Subspace::from_spanning(f, self.dim(), &vecs)
    }

    /// The center, as a subspace.
    pub fn center(&self) -> Subspace<F::Elem> {
        let f = &self.field;
        let dim = self.dim();
        // z -> (b_i z - z b_i)_i
        let mut acc = Accumulator::new(f, dim * dim);
        let mut cols = Vec::with_capacity(dim);
        for z in 0..dim {
            for i in 0..dim {
                for (k, c) in self.mul_basis(i, z) {
                    acc.add(f, (i * dim) as u32 + k, c);
                }
                for (k, c) in self.mul_basis(z, i) {
                    acc.add(f, (i * dim) as u32 + k, &f.neg(c));
                }
            }
            cols.push(acc.drain(f));
        }
        kernel_basis(f, &SparseMatrix::from_columns(dim * dim, cols))
    }

    /// Basis index of a system idempotent when it is a single basis element.
    pub fn system_basis_index(&self, k: usize) -> Option<usize> {
        let e = &self.system[k];
        if e.len() == 1 && self.field.is_one(&e[0].1) {
            Some(e[0].0 as usize)
        } else {
            None
        }
    }

    pub fn is_commutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| (0..dim).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// A grading of the basis by integer vectors such that every nonzero
    /// structure constant `c_ij^l` satisfies `w(i) + w(j) = w(l)`. It is the
    /// finest such grading, computed as a rational null space.
    pub fn universal_grading(&self) -> Vec<Vec<i64>> {
        let q = Rationals;
        let dim = self.dim();
        let mut rows: Vec<SparseVec<crate::exactla::Rational>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for i in 0..dim {
            for j in 0..dim {
                for (l, _) in self.mul_basis(i, j) {
                    let l = *l as usize;
                    if !seen.insert((i.min(j), i.max(j), l)) {
                        continue;
                    }
                    let mut e: Vec<(u32, i64)> = vec![(i as u32, 1), (j as u32, 1), (l as u32, -1)];
                    e.sort_by_key(|x| x.0);
                    let mut merged: Vec<(u32, i64)> = Vec::new();
                    for (k, v) in e {
                        match merged.last_mut() {
                            Some(last) if last.0 == k => last.1 += v,
                            _ => merged.push((k, v)),
                        }
                    }
                    let row: SparseVec<_> = merged
                        .into_iter()
                        .filter(|(_, v)| *v != 0)
                        .map(|(k, v)| (k, q.from_i64(v)))
                        .collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let m = SparseMatrix::from_columns(dim, rows).transpose();
        let ker = kernel_basis(&q, &m);
        let mut weights = vec![Vec::with_capacity(ker.dim()); dim];
        for v in ker.basis() {
            let mut lcm = num_bigint::BigInt::from(1);
            for (_, x) in v {
                let d = x.to_big().denom().clone();
                lcm = num_integer::Integer::lcm(&lcm, &d);
            }
            let mut dense = vec![0i64; dim];
            for (i, x) in v {
                let scaled = x.to_big() * num_rational::BigRational::from_integer(lcm.clone());
                dense[*i as usize] = num_traits::ToPrimitive::to_i64(scaled.numer()).expect("grading overflow");
            }
            for (i, w) in weights.iter_mut().enumerate() {
                w.push(dense[i]);
            }
        }
        weights
    }

    /// The product algebra `self x other`, basis of `self` first.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let f = &self.field;
        let (n, m) = (self.dim(), other.dim());
        let d = n + m;
        let mut table = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                table[i * d + j] = self.mul_basis(i, j).clone();
            }
        }
        let shift = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            v.iter().map(|(k, x)| (k + n as u32, x.clone())).collect()
        };
        for i in 0..m {
            for j in 0..m {
                table[(n + i) * d + n + j] = shift(other.mul_basis(i, j));
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(shift(&other.unit));
        let mut system: Vec<SparseVec<F::Elem>> = self.system.clone();
        system.extend(other.system.iter().map(shift));
        let mut labels: Vec<String> = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut slabels = self.system_labels.clone();
        slabels.extend(other.system_labels.iter().cloned());
        FinDimAlgebra::from_structure_constants(f, labels, table, unit, system, slabels)
    }

    /// Same algebra with another system of idempotents.
    pub fn with_system(&self, system: Vec<SparseVec<F::Elem>>, labels: Vec<String>) -> Result<Self> {
        FinDimAlgebra::from_structure_constants(
            &self.field,
            self.labels.clone(),
            self.table.clone(),
            self.unit.clone(),
            system,
            labels,
        )
    }
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field<F: Field>(f: &F) -> FinDimAlgebra<F> {
    FinDimAlgebra::from_structure_constants(
        f,
        vec!["1".into()],
        vec![vec![(0, f.one())]],
        vec![(0, f.one())],
        vec![vec![(0, f.one())]],
        vec!["1".into()],
    )
    .expect("k is an algebra")
}
