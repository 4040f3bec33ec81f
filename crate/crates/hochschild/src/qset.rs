//! Q-sets on simply laced quivers, the algebra of a Q-set with zero
//! compositions, square algebras and their associativity constraints.

use std::sync::Arc;

use crate::algebra::{same_algebra, tensor_over, AlgRef, Bimodule, FinDimAlgebra, Quiver, TensorProduct};
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{solve_homogeneous, Field, SparseMatrix, SparseVec, Subspace};

/// An algebra at each vertex and a nonzero bimodule at each arrow of a
/// simply laced quiver. Compositions are zero.
#[derive(Clone, Debug)]
pub struct QSet<F: Field> {
    quiver: Quiver,
    algebras: Vec<AlgRef<F>>,
    bimodules: Vec<Bimodule<F>>,
}

impl<F: Field> QSet<F> {
    pub fn new(quiver: Quiver, algebras: Vec<AlgRef<F>>, bimodules: Vec<Bimodule<F>>) -> Result<Self> {
        if !quiver.is_simply_laced() {
            return Err(Error::InvalidQSet("quiver has a loop or parallel arrows".into()));
        }
        if algebras.len() != quiver.num_vertices() || bimodules.len() != quiver.num_arrows() {
            return Err(Error::InvalidQSet("need one algebra per vertex and one bimodule per arrow".into()));
        }
        let field = algebras.first().map(|a| a.field().name());
        for a in &algebras {
            if Some(a.field().name()) != field {
                return Err(Error::InvalidQSet("algebras over different fields".into()));
            }
        }
        for (arrow, m) in quiver.arrows().iter().zip(&bimodules) {
            if m.is_zero() {
                return Err(Error::InvalidQSet(format!("bimodule at arrow '{}' is zero", arrow.label)));
            }
            if !same_algebra(m.left_algebra(), &algebras[arrow.target])
                || !same_algebra(m.right_algebra(), &algebras[arrow.source])
            {
                return Err(Error::InvalidQSet(format!(
                    "bimodule at arrow '{}' is not over the algebras of its endpoints",
                    arrow.label
                )));
            }
        }
        Ok(QSet { quiver, algebras, bimodules })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn algebra(&self, x: usize) -> &AlgRef<F> {
        &self.algebras[x]
    }

    pub fn algebras(&self) -> &[AlgRef<F>] {
        &self.algebras
    }

    pub fn bimodule(&self, a: usize) -> &Bimodule<F> {
        &self.bimodules[a]
    }

    pub fn bimodules(&self) -> &[Bimodule<F>] {
        &self.bimodules
    }

    pub fn field(&self) -> &F {
        self.algebras[0].field()
    }
}

/// Where a basis element of the assembled algebra comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Vertex(usize),
    Arrow(usize),
}

/// The algebra `A (+) M` of a Q-set, with the block of each basis element.
#[derive(Clone, Debug)]
pub struct Lambda<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    vertex_offset: Vec<usize>,
    arrow_offset: Vec<usize>,
    origin: Vec<Origin>,
}

impl<F: Field> Lambda<F> {
    pub fn origin(&self, i: usize) -> Origin {
        self.origin[i]
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origin
    }

    /// First basis index of the block.
    pub fn offset(&self, o: Origin) -> usize {
        match o {
            Origin::Vertex(x) => self.vertex_offset[x],
            Origin::Arrow(a) => self.arrow_offset[a],
        }
    }

    /// Index of the basis element inside its block.
    pub fn local(&self, i: usize) -> usize {
        i - self.offset(self.origin[i])
    }
}

/// Assembles `A (+) M` with `M * M = 0`. The system is the units of the
/// vertex algebras, labelled by the vertices.
pub fn assemble_lambda<F: Field>(q: &QSet<F>) -> Result<Lambda<F>> {
    let f = q.field();
    let quiver = q.quiver();
    let mut vertex_offset = Vec::new();
    let mut arrow_offset = Vec::new();
    let mut origin = Vec::new();
    let mut labels = Vec::new();
    let mut off = 0;
    for (x, a) in q.algebras().iter().enumerate() {
        vertex_offset.push(off);
        for i in 0..a.dim() {
            origin.push(Origin::Vertex(x));
            labels.push(format!("{}:{}", quiver.vertices()[x], a.label(i)));
        }
        off += a.dim();
    }
    for (k, m) in q.bimodules().iter().enumerate() {
        arrow_offset.push(off);
        for i in 0..m.dim() {
            origin.push(Origin::Arrow(k));
            labels.push(format!("{}:{}", quiver.arrows()[k].label, i));
        }
        off += m.dim();
    }
    let dim = off;
    let shift = |v: &[(u32, F::Elem)], by: usize| -> SparseVec<F::Elem> {
        v.iter().map(|(i, x)| (*i + by as u32, x.clone())).collect()
    };
    let mut table = vec![Vec::new(); dim * dim];
    for (x, a) in q.algebras().iter().enumerate() {
        let o = vertex_offset[x];
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                table[(o + i) * dim + o + j] = shift(a.mul_basis(i, j), o);
            }
        }
    }
    for (k, m) in q.bimodules().iter().enumerate() {
        let arrow = &quiver.arrows()[k];
        let om = arrow_offset[k];
        let (ot, os) = (vertex_offset[arrow.target], vertex_offset[arrow.source]);
        for u in 0..m.dim() {
            let e = [(u as u32, f.one())];
            for i in 0..m.left_algebra().dim() {
                table[(ot + i) * dim + om + u] = shift(&m.act_left(i, &e), om);
            }
            for j in 0..m.right_algebra().dim() {
                table[(om + u) * dim + os + j] = shift(&m.act_right(&e, j), om);
            }
        }
    }
    let mut unit = Vec::new();
    let mut system = Vec::new();
    for (x, a) in q.algebras().iter().enumerate() {
        let u = shift(a.unit(), vertex_offset[x]);
        unit.extend(u.iter().cloned());
        system.push(u);
    }
    let algebra = FinDimAlgebra::from_structure_constants(f, labels, table, unit, system, quiver.vertices().to_vec())?;
    Ok(Lambda { algebra, vertex_offset, arrow_offset, origin })
}

/// Data of a square algebra `[[A, N], [M, B]]` with `n m = alpha(n (x) m)`
/// and `m n = beta(m (x) n)`. `alpha` is a matrix from the coordinates of
/// `N (x)_B M` to `A`, `beta` from `M (x)_A N` to `B`.
#[derive(Clone, Debug)]
pub struct SquareData<F: Field> {
    pub a: AlgRef<F>,
    pub b: AlgRef<F>,
    pub m: Bimodule<F>,
    pub n: Bimodule<F>,
    pub alpha: SparseMatrix<F::Elem>,
    pub beta: SparseMatrix<F::Elem>,
    nm: TensorProduct<F>,
    mn: TensorProduct<F>,
}

impl<F: Field> SquareData<F> {
    /// `M` a `B-A`-bimodule, `N` an `A-B`-bimodule.
    pub fn new(
        a: AlgRef<F>,
        b: AlgRef<F>,
        m: Bimodule<F>,
        n: Bimodule<F>,
        alpha: SparseMatrix<F::Elem>,
        beta: SparseMatrix<F::Elem>,
    ) -> Result<Self> {
        if !same_algebra(m.left_algebra(), &b)
            || !same_algebra(m.right_algebra(), &a)
            || !same_algebra(n.left_algebra(), &a)
            || !same_algebra(n.right_algebra(), &b)
        {
            return Err(Error::AlgebraMismatch("corner bimodules are not over (B, A) and (A, B)".into()));
        }
        let nm = tensor_over(&n, &m)?;
        let mn = tensor_over(&m, &n)?;
        if alpha.nrows() != a.dim() || alpha.ncols() != nm.module.dim() {
            return Err(Error::Input("alpha has the wrong shape".into()));
        }
        if beta.nrows() != b.dim() || beta.ncols() != mn.module.dim() {
            return Err(Error::Input("beta has the wrong shape".into()));
        }
        Ok(SquareData { a, b, m, n, alpha, beta, nm, mn })
    }

    /// Null-square data: `alpha = beta = 0`.
    pub fn null(a: AlgRef<F>, b: AlgRef<F>, m: Bimodule<F>, n: Bimodule<F>) -> Result<Self> {
        let nm = tensor_over(&n, &m)?;
        let mn = tensor_over(&m, &n)?;
        let alpha = SparseMatrix::zeros(a.dim(), nm.module.dim());
        let beta = SparseMatrix::zeros(b.dim(), mn.module.dim());
        SquareData::new(a, b, m, n, alpha, beta)
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn is_null(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    /// `N (x)_B M` and `M (x)_A N`.
    pub fn tensors(&self) -> (&TensorProduct<F>, &TensorProduct<F>) {
        (&self.nm, &self.mn)
    }

    /// The round trip Q-set `x -a-> y -b-> x` with `A` at `x`, `B` at `y`,
    /// `M` on `a` and `N` on `b`.
    pub fn qset(&self) -> Result<QSet<F>> {
        let quiver = Quiver::from_labels(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")])?;
        QSet::new(quiver, vec![self.a.clone(), self.b.clone()], vec![self.m.clone(), self.n.clone()])
    }

    /// Replaces `alpha` and `beta` by a point of the joint space returned by
    /// `solve_associativity`.
    pub fn with_maps(&self, point: &[(u32, F::Elem)]) -> Result<Self> {
        let (da, dnm) = (self.a.dim(), self.nm.module.dim());
        let db = self.b.dim();
        let split = da * dnm;
        let mut ta = Vec::new();
        let mut tb = Vec::new();
        for (i, x) in point {
            let i = *i as usize;
            if i < split {
                ta.push((i % da, i / da, x.clone()));
            } else {
                let i = i - split;
                tb.push((i % db, i / db, x.clone()));
            }
        }
        let f = self.field();
        let alpha = SparseMatrix::from_triplets(f, da, dnm, ta);
        let beta = SparseMatrix::from_triplets(f, db, self.mn.module.dim(), tb);
        SquareData::new(self.a.clone(), self.b.clone(), self.m.clone(), self.n.clone(), alpha, beta)
    }
}

/// The square algebra with basis `A`, `B`, `M`, `N` in this order and system
/// `{1_A, 1_B}` labelled `x`, `y`.
pub fn assemble_square<F: Field>(sq: &SquareData<F>) -> Result<FinDimAlgebra<F>> {
    let f = sq.field();
    let (a, b, m, n) = (&sq.a, &sq.b, &sq.m, &sq.n);
    let (oa, ob, om, on) = (0, a.dim(), a.dim() + b.dim(), a.dim() + b.dim() + m.dim());
    let dim = on + n.dim();
    let shift = |v: &[(u32, F::Elem)], by: usize| -> SparseVec<F::Elem> {
        v.iter().map(|(i, x)| (*i + by as u32, x.clone())).collect()
    };
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            table[(oa + i) * dim + oa + j] = shift(a.mul_basis(i, j), oa);
        }
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            table[(ob + i) * dim + ob + j] = shift(b.mul_basis(i, j), ob);
        }
    }
    for u in 0..m.dim() {
        let e = [(u as u32, f.one())];
        for i in 0..b.dim() {
            table[(ob + i) * dim + om + u] = shift(&m.act_left(i, &e), om);
        }
        for j in 0..a.dim() {
            table[(om + u) * dim + oa + j] = shift(&m.act_right(&e, j), om);
        }
    }
    for u in 0..n.dim() {
        let e = [(u as u32, f.one())];
        for i in 0..a.dim() {
            table[(oa + i) * dim + on + u] = shift(&n.act_left(i, &e), on);
        }
        for j in 0..b.dim() {
            table[(on + u) * dim + ob + j] = shift(&n.act_right(&e, j), on);
        }
    }
    let (nm, mn) = sq.tensors();
    for u in 0..m.dim() {
        for v in 0..n.dim() {
            let (eu, ev) = ([(u as u32, f.one())], [(v as u32, f.one())]);
            let t = mn.project(&eu, &ev);
            table[(om + u) * dim + on + v] = shift(&sq.beta.mul_vec(f, &t), ob);
            let s = nm.project(&ev, &eu);
            table[(on + v) * dim + om + u] = shift(&sq.alpha.mul_vec(f, &s), oa);
        }
    }
    let mut unit = shift(a.unit(), oa);
    unit.extend(shift(b.unit(), ob));
    let system = vec![shift(a.unit(), oa), shift(b.unit(), ob)];
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("x:{}", l)).collect();
    labels.extend(b.labels().iter().map(|l| format!("y:{}", l)));
    labels.extend((0..m.dim()).map(|i| format!("a:{}", i)));
    labels.extend((0..n.dim()).map(|i| format!("b:{}", i)));
    FinDimAlgebra::from_structure_constants(f, labels, table, unit, system, vec!["x".into(), "y".into()]).map_err(|e| match e {
        Error::NotAssociative(x, y, z) => Error::AssociativityViolated(format!("{}, {}, {}", x, y, z)),
        other => other,
    })
}

/// All pairs `(alpha, beta)` of bimodule maps satisfying both associativity
/// constraints, as a subspace of `Hom_k(N (x)_B M, A) (+) Hom_k(M (x)_A N, B)`.
/// The coordinate of the `alpha` entry (output `o`, input `t`) is
/// `t * dim A + o`; `beta` coordinates follow after all of `alpha`.
pub fn solve_associativity<F: Field>(
    a: &AlgRef<F>,
    b: &AlgRef<F>,
    m: &Bimodule<F>,
    n: &Bimodule<F>,
) -> Result<Subspace<F::Elem>> {
    let sq = SquareData::null(a.clone(), b.clone(), m.clone(), n.clone())?;
    let f = a.field();
    let (nm, mn) = sq.tensors();
    let (da, db, dm, dn) = (a.dim(), b.dim(), m.dim(), n.dim());
    let (dnm, dmn) = (nm.module.dim(), mn.module.dim());
    let alpha_var = |t: usize, o: usize| (t * da + o) as u32;
    let beta_var = |s: usize, o: usize| (da * dnm + s * db + o) as u32;
    let unknowns = da * dnm + db * dmn;
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::new();

    // bimodule map conditions for a map phi: T -> X over algebra C acting on both sides
    let mut bimodule_rows = |t_mod: &Bimodule<F>, c: &FinDimAlgebra<F>, var: &dyn Fn(usize, usize) -> u32| {
        let dt = t_mod.dim();
        for side in 0..2 {
            for i in 0..c.dim() {
                let act = if side == 0 { &t_mod.left_matrices()[i] } else { &t_mod.right_matrices()[i] };
                for t in 0..dt {
                    // phi(c_i t) - c_i phi(t), or phi(t c_i) - phi(t) c_i, per output coordinate
                    let mut per_out: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); c.dim()];
                    for (t2, x) in act.col(t) {
                        for (o, slot) in per_out.iter_mut().enumerate() {
                            slot.push((var(*t2 as usize, o), x.clone()));
                        }
                    }
                    for o in 0..c.dim() {
                        let prod = if side == 0 { c.mul_basis(i, o) } else { c.mul_basis(o, i) };
                        for (r, x) in prod {
                            per_out[*r as usize].push((var(t, o), f.neg(x)));
                        }
                    }
                    rows.extend(per_out.into_iter().map(|r| normalize(f, r)));
                }
            }
        }
    };
    bimodule_rows(&nm.module, a, &alpha_var);
    bimodule_rows(&mn.module, b, &beta_var);

    // beta(m n) m' = m alpha(n m')
    for u in 0..dm {
        for v in 0..dn {
            let eu = [(u as u32, f.one())];
            let ev = [(v as u32, f.one())];
            let s = mn.project(&eu, &ev);
            for u2 in 0..dm {
                let eu2 = [(u2 as u32, f.one())];
                let t = nm.project(&ev, &eu2);
                let mut per_out: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); dm];
                for (si, c) in &s {
                    for o in 0..db {
                        for (r, x) in m.act_left(o, &eu2) {
                            per_out[r as usize].push((beta_var(*si as usize, o), f.mul(c, &x)));
                        }
                    }
                }
                for (ti, c) in &t {
                    for o in 0..da {
                        for (r, x) in m.act_right(&eu, o) {
                            per_out[r as usize].push((alpha_var(*ti as usize, o), f.neg(&f.mul(c, &x))));
                        }
                    }
                }
                rows.extend(per_out.into_iter().map(|r| normalize(f, r)));
            }
        }
    }
    // alpha(n m) n' = n beta(m n')
    for v in 0..dn {
        for u in 0..dm {
            let ev = [(v as u32, f.one())];
            let eu = [(u as u32, f.one())];
            let t = nm.project(&ev, &eu);
            for v2 in 0..dn {
                let ev2 = [(v2 as u32, f.one())];
                let s = mn.project(&eu, &ev2);
                let mut per_out: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); dn];
                for (ti, c) in &t {
                    for o in 0..da {
                        for (r, x) in n.act_left(o, &ev2) {
                            per_out[r as usize].push((alpha_var(*ti as usize, o), f.mul(c, &x)));
                        }
                    }
                }
                for (si, c) in &s {
                    for o in 0..db {
                        for (r, x) in n.act_right(&ev, o) {
                            per_out[r as usize].push((beta_var(*si as usize, o), f.neg(&f.mul(c, &x))));
                        }
                    }
                }
                rows.extend(per_out.into_iter().map(|r| normalize(f, r)));
            }
        }
    }
    let rows: Vec<SparseVec<F::Elem>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let nrows = rows.len();
    let constraints = SparseMatrix::from_columns(unknowns, rows).transpose();
    debug_assert_eq!(constraints.nrows(), nrows);
    Ok(solve_homogeneous(f, &constraints))
}

/// `B (x) A` as a `B-A`-bimodule: the free bimodule of rank one.
pub fn free_rank_one<F: Field>(b: &AlgRef<F>, a: &AlgRef<F>) -> Result<Bimodule<F>> {
    let q = a.dim();
    Bimodule::from_fn(
        b.clone(),
        a.clone(),
        b.dim() * q,
        |i, k| {
            b.mul_basis(i, k / q).iter().map(|(s, x)| ((*s as usize * q + k % q) as u32, x.clone())).collect()
        },
        |k, j| {
            a.mul_basis(k % q, j).iter().map(|(s, x)| (((k / q) * q + *s as usize) as u32, x.clone())).collect()
        },
    )
}

/// Shares one allocation for an algebra used in several places.
pub fn share<F: Field>(a: FinDimAlgebra<F>) -> AlgRef<F> {
    Arc::new(a)
}
