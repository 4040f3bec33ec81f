use std::sync::Arc;

use super::algebra::FinDimAlgebra;
use super::quiver::{Arrow, Quiver};
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{kernel_basis, Field, SparseMatrix, SparseVec, Subspace};

pub type AlgRef<F> = Arc<FinDimAlgebra<F>>;

pub fn same_algebra<F: Field>(a: &AlgRef<F>, b: &AlgRef<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite dimensional `B-A`-bimodule: left action by `B`, right action by `A`.
///
/// `left[i]` is the matrix of `v -> b_i v` and `right[j]` the matrix of
/// `v -> v a_j`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    left_alg: AlgRef<F>,
    right_alg: AlgRef<F>,
    dim: usize,
    left: Vec<SparseMatrix<F::Elem>>,
    right: Vec<SparseMatrix<F::Elem>>,
}

impl<F: Field> PartialEq for Bimodule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && same_algebra(&self.left_alg, &other.left_alg)
            && same_algebra(&self.right_alg, &other.right_alg)
            && self.left == other.left
            && self.right == other.right
    }
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left_alg: AlgRef<F>,
        right_alg: AlgRef<F>,
        dim: usize,
        left: Vec<SparseMatrix<F::Elem>>,
        right: Vec<SparseMatrix<F::Elem>>,
    ) -> Result<Self> {
        let m = Bimodule { left_alg, right_alg, dim, left, right };
        m.validate()?;
        Ok(m)
    }

    /// Builds from action functions on basis vectors: `left(i, k)` is
    /// `b_i * v_k`, `right(k, j)` is `v_k * a_j`.
    pub fn from_fn(
        left_alg: AlgRef<F>,
        right_alg: AlgRef<F>,
        dim: usize,
        mut left: impl FnMut(usize, usize) -> SparseVec<F::Elem>,
        mut right: impl FnMut(usize, usize) -> SparseVec<F::Elem>,
    ) -> Result<Self> {
        let l = (0..left_alg.dim())
            .map(|i| SparseMatrix::from_columns(dim, (0..dim).map(|k| left(i, k)).collect()))
            .collect();
        let r = (0..right_alg.dim())
            .map(|j| SparseMatrix::from_columns(dim, (0..dim).map(|k| right(k, j)).collect()))
            .collect();
        Bimodule::new(left_alg, right_alg, dim, l, r)
    }

    fn validate(&self) -> Result<()> {
        let f = self.field();
        let (b, a) = (&self.left_alg, &self.right_alg);
        if self.left.len() != b.dim() || self.right.len() != a.dim() {
            return Err(Error::InvalidBimodule("wrong number of action matrices".into()));
        }
        for m in self.left.iter().chain(&self.right) {
            if m.nrows() != self.dim || m.ncols() != self.dim {
                return Err(Error::InvalidBimodule("action matrix has the wrong shape".into()));
            }
        }
        let id = SparseMatrix::identity(f, self.dim);
        if self.left_action(b.unit()) != id {
            return Err(Error::InvalidBimodule("left unit does not act as the identity".into()));
        }
        if self.right_action(a.unit()) != id {
            return Err(Error::InvalidBimodule("right unit does not act as the identity".into()));
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                if self.left[i].mul(f, &self.left[j]) != self.left_action(b.mul_basis(i, j)) {
                    return Err(Error::InvalidBimodule(format!(
                        "left action fails on ({}, {})",
                        b.label(i),
                        b.label(j)
                    )));
                }
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.right[j].mul(f, &self.right[i]) != self.right_action(a.mul_basis(i, j)) {
                    return Err(Error::InvalidBimodule(format!(
                        "right action fails on ({}, {})",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        for (i, l) in self.left.iter().enumerate() {
            for (j, r) in self.right.iter().enumerate() {
                if l.mul(f, r) != r.mul(f, l) {
                    return Err(Error::InvalidBimodule(format!(
                        "actions of {} and {} do not commute",
                        b.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(left_alg: AlgRef<F>, right_alg: AlgRef<F>) -> Self {
        let left = vec![SparseMatrix::zeros(0, 0); left_alg.dim()];
        let right = vec![SparseMatrix::zeros(0, 0); right_alg.dim()];
        Bimodule { left_alg, right_alg, dim: 0, left, right }
    }

    /// `A` as an `A-A`-bimodule.
    pub fn regular(a: AlgRef<F>) -> Self {
        let left = (0..a.dim()).map(|i| a.left_mult_matrix(&[(i as u32, a.field().one())])).collect();
        let right = (0..a.dim()).map(|i| a.right_mult_matrix(&[(i as u32, a.field().one())])).collect();
        Bimodule { left_alg: a.clone(), right_alg: a.clone(), dim: a.dim(), left, right }
    }

    pub fn field(&self) -> &F {
        self.left_alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn left_algebra(&self) -> &AlgRef<F> {
        &self.left_alg
    }

    pub fn right_algebra(&self) -> &AlgRef<F> {
        &self.right_alg
    }

    pub fn left_matrices(&self) -> &[SparseMatrix<F::Elem>] {
        &self.left
    }

    pub fn right_matrices(&self) -> &[SparseMatrix<F::Elem>] {
        &self.right
    }

    /// Matrix of `v -> x v` for an element `x` of the left algebra.
    pub fn left_action(&self, x: &[(u32, F::Elem)]) -> SparseMatrix<F::Elem> {
        let f = self.field();
        let mut acc = SparseMatrix::zeros(self.dim, self.dim);
        for (i, c) in x {
            acc = acc.add_scaled(f, c, &self.left[*i as usize]);
        }
        acc
    }

    /// Matrix of `v -> v x` for an element `x` of the right algebra.
    pub fn right_action(&self, x: &[(u32, F::Elem)]) -> SparseMatrix<F::Elem> {
        let f = self.field();
        let mut acc = SparseMatrix::zeros(self.dim, self.dim);
        for (i, c) in x {
            acc = acc.add_scaled(f, c, &self.right[*i as usize]);
        }
        acc
    }

    /// `b_i * v`
    pub fn act_left(&self, i: usize, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        self.left[i].mul_vec(self.field(), v)
    }

    /// `v * a_j`
    pub fn act_right(&self, v: &[(u32, F::Elem)], j: usize) -> SparseVec<F::Elem> {
        self.right[j].mul_vec(self.field(), v)
    }

    /// The subspace `y M x` for elements `y` of the left and `x` of the right algebra.
    pub fn corner(&self, y: &[(u32, F::Elem)], x: &[(u32, F::Elem)]) -> Subspace<F::Elem> {
        let f = self.field();
        let m = self.left_action(y).mul(f, &self.right_action(x));
        crate::exactla::column_space(f, &m)
    }

    /// Direct sum, basis of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.left_alg, &other.left_alg) || !same_algebra(&self.right_alg, &other.right_alg) {
            return Err(Error::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
        }
        let n = self.dim;
        let d = n + other.dim;
        let shift = |v: &[(u32, F::Elem)]| -> SparseVec<F::Elem> { v.iter().map(|(i, x)| (i + n as u32, x.clone())).collect() };
        let stack = |a: &SparseMatrix<F::Elem>, b: &SparseMatrix<F::Elem>| {
            let mut cols: Vec<SparseVec<F::Elem>> = a.columns().to_vec();
            cols.extend(b.columns().iter().map(|c| shift(c)));
            SparseMatrix::from_columns(d, cols)
        };
        let left = self.left.iter().zip(&other.left).map(|(a, b)| stack(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(a, b)| stack(a, b)).collect();
        Ok(Bimodule { left_alg: self.left_alg.clone(), right_alg: self.right_alg.clone(), dim: d, left, right })
    }

    /// The same space viewed over other algebras through the given maps:
    /// `left_map[i]` is the image of the i-th basis element of the new left
    /// algebra in the old one, likewise on the right. The maps must be
    /// algebra morphisms (checked through the bimodule axioms).
    pub fn pull_back(
        &self,
        new_left: AlgRef<F>,
        left_map: &[SparseVec<F::Elem>],
        new_right: AlgRef<F>,
        right_map: &[SparseVec<F::Elem>],
    ) -> Result<Self> {
        let left = left_map.iter().map(|x| self.left_action(x)).collect();
        let right = right_map.iter().map(|x| self.right_action(x)).collect();
        Bimodule::new(new_left, new_right, self.dim, left, right)
    }
}

/// The free bimodule `B f (x) e A` on the corner of idempotents `f` of `B`
/// and `e` of `A`, given by their system labels.
pub fn free_corner_bimodule<F: Field>(b: &AlgRef<F>, f_label: &str, e_label: &str, a: &AlgRef<F>) -> Result<Bimodule<F>> {
    let fld = b.field();
    let fi = b.system_index(f_label).ok_or_else(|| Error::NotInSystem(f_label.to_string()))?;
    let ei = a.system_index(e_label).ok_or_else(|| Error::NotInSystem(e_label.to_string()))?;
    let bf = b.corner_space(b.unit(), &b.system()[fi]);
    let ea = a.corner_space(&a.system()[ei], a.unit());
    let (p, q) = (bf.dim(), ea.dim());
    let dim = p * q;
    let left = |i: usize, k: usize| -> SparseVec<F::Elem> {
        let (u, v) = (k / q, k % q);
        let bu = b.mul(&[(i as u32, fld.one())], &bf.basis()[u]);
        bf.coords(&bu).into_iter().map(|(s, c)| ((s as usize * q + v) as u32, c)).collect()
    };
    let right = |k: usize, j: usize| -> SparseVec<F::Elem> {
        let (u, v) = (k / q, k % q);
        let va = a.mul(&ea.basis()[v], &[(j as u32, fld.one())]);
        ea.coords(&va).into_iter().map(|(s, c)| ((u * q + s as usize) as u32, c)).collect()
    };
    Bimodule::from_fn(b.clone(), a.clone(), dim, left, right)
}

/// Bimodule maps `M -> N` as a subspace of `Hom_k(M, N)`; the coordinate of
/// the matrix entry (output `o`, input `i`) is `i * dim N + o`.
pub fn hom_bimodule<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Subspace<F::Elem>> {
    if !same_algebra(m.left_algebra(), n.left_algebra()) || !same_algebra(m.right_algebra(), n.right_algebra()) {
        return Err(Error::AlgebraMismatch("Hom between bimodules over different algebras".into()));
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(Subspace::zero(0));
    }
    let gens: Vec<(&SparseMatrix<F::Elem>, &SparseMatrix<F::Elem>)> =
        m.left.iter().zip(&n.left).chain(m.right.iter().zip(&n.right)).collect();
    let block = unknowns;
    let mut cols: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); unknowns];
    for (g, (am, an)) in gens.iter().enumerate() {
        // constraint phi * am - an * phi = 0, entry (o, i) at row g*block + i*dn + o
        let amt = am.transpose();
        let base = (g * block) as u32;
        for k in 0..dm {
            for o in 0..dn {
                let var = k * dn + o;
                // phi[o][k] * am[k][i]
                for (i, x) in amt.col(k) {
                    cols[var].push((base + *i * dn as u32 + o as u32, x.clone()));
                }
                // -an[o'][o] * phi[o][k] lands at (o', k)
                for (o2, x) in an.col(o) {
                    cols[var].push((base + (k * dn) as u32 + *o2, f.neg(x)));
                }
            }
        }
    }
    let cols: Vec<SparseVec<F::Elem>> = cols.into_iter().map(|c| normalize(f, c)).collect();
    let mat = SparseMatrix::from_columns(gens.len() * block, cols);
    Ok(kernel_basis(f, &mat))
}

/// Peirce quiver of an algebra with respect to its system: an arrow
/// `x -> y` whenever `x != y` and `e_y A e_x != 0`.
pub fn peirce_quiver<F: Field>(a: &FinDimAlgebra<F>) -> Quiver {
    let sys = a.system();
    let mut arrows = Vec::new();
    for (x, ex) in sys.iter().enumerate() {
        for (y, ey) in sys.iter().enumerate() {
            if x != y && a.corner_space(ey, ex).dim() > 0 {
                arrows.push(Arrow {
                    label: format!("{}->{}", a.system_labels()[x], a.system_labels()[y]),
                    source: x,
                    target: y,
                });
            }
        }
    }
    Quiver::new(a.system_labels().to_vec(), arrows).expect("labels are distinct")
}
