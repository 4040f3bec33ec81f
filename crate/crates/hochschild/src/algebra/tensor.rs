use super::bimodule::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{rank, Echelon, Field, SparseMatrix, SparseVec, Subspace};

/// `M (x)_B N` realized as a quotient of `(+)_f Mf (x) fN` over the system
/// idempotents `f` of `B`, with the echelon-chosen complement as basis.
#[derive(Clone, Debug)]
pub struct TensorProduct<F: Field> {
    pub module: Bimodule<F>,
    // per idempotent f: basis of Mf, basis of fN, offset of the block
    blocks: Vec<(Subspace<F::Elem>, Subspace<F::Elem>, usize)>,
    // per idempotent f: matrices of m -> mf and n -> fn
    idem: Vec<(SparseMatrix<F::Elem>, SparseMatrix<F::Elem>)>,
    relations: Subspace<F::Elem>,
    // quotient coordinate of each free coordinate of the big space
    quotient_index: Vec<Option<u32>>,
    free: Vec<u32>,
}

impl<F: Field> TensorProduct<F> {
    /// Coordinates in the tensor product of the class of `m (x) n`.
    pub fn project(&self, m: &[(u32, F::Elem)], n: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.module.field();
        let mut entries = Vec::new();
        for ((mf, fnn, off), (rm, ln)) in self.blocks.iter().zip(&self.idem) {
            let q = fnn.dim();
            if q == 0 || mf.dim() == 0 {
                continue;
            }
            let cm = mf.coords(&rm.mul_vec(f, m));
            let cn = fnn.coords(&ln.mul_vec(f, n));
            for (u, x) in &cm {
                for (v, y) in &cn {
                    entries.push(((off + *u as usize * q + *v as usize) as u32, f.mul(x, y)));
                }
            }
        }
        self.to_quotient(&normalize(f, entries))
    }

    fn to_quotient(&self, w: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.module.field();
        let r = self.relations.reduce(f, w);
        r.into_iter().map(|(i, x)| (self.quotient_index[i as usize].expect("reduced vectors avoid pivots"), x)).collect()
    }

    /// Representative in the big space of a quotient basis vector, as a pair
    /// list of pure tensors `(m, n)` with coefficients.
    pub fn lift_basis(&self, k: usize) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let idx = self.free[k] as usize;
        for (mf, fnn, off) in &self.blocks {
            let size = mf.dim() * fnn.dim();
            if idx >= *off && idx < off + size {
                let (u, v) = ((idx - off) / fnn.dim(), (idx - off) % fnn.dim());
                return (mf.basis()[u].clone(), fnn.basis()[v].clone());
            }
        }
        unreachable!("free index inside some block")
    }
}

/// `M (x)_B N` for a `C-B`-bimodule `M` and a `B-A`-bimodule `N`.
pub fn tensor_over<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<TensorProduct<F>> {
    if !same_algebra(m.right_algebra(), n.left_algebra()) {
        return Err(Error::AlgebraMismatch("tensor product over different algebras".into()));
    }
    let f = m.field();
    let b = m.right_algebra().clone();
    let sys = b.system();
    let mut blocks = Vec::with_capacity(sys.len());
    let mut idem = Vec::with_capacity(sys.len());
    let mut off = 0;
    for e in sys {
        let (rm, ln) = (m.right_action(e), n.left_action(e));
        let mf = crate::exactla::column_space(f, &rm);
        let fnn = crate::exactla::column_space(f, &ln);
        let size = mf.dim() * fnn.dim();
        blocks.push((mf, fnn, off));
        idem.push((rm, ln));
        off += size;
    }
    let total = off;
    let coords_in = |k: usize, v: &[(u32, F::Elem)], left: bool| -> SparseVec<F::Elem> {
        let s = if left { &blocks[k].0 } else { &blocks[k].1 };
        s.coords(v)
    };
    let mut rel = Echelon::new(f, total);
    for (fp, ep) in sys.iter().enumerate() {
        for (fi, ei) in sys.iter().enumerate() {
            let corner = b.corner_space(ep, ei);
            if corner.dim() == 0 {
                continue;
            }
            let (mfp, _, offp) = &blocks[fp];
            let (_, fin, offi) = &blocks[fi];
            let qp = blocks[fp].1.dim();
            let qi = fin.dim();
            for bvec in corner.basis() {
                let ract = m.right_action(bvec);
                let lact = n.left_action(bvec);
                for (u, mu) in mfp.basis().iter().enumerate() {
                    let mb = coords_in(fi, &ract.mul_vec(f, mu), true);
                    for (v, nv) in fin.basis().iter().enumerate() {
                        let bn = coords_in(fp, &lact.mul_vec(f, nv), false);
                        let mut entries = Vec::new();
                        for (s, x) in &mb {
                            entries.push(((offi + *s as usize * qi + v) as u32, x.clone()));
                        }
                        for (s, x) in &bn {
                            entries.push(((offp + u * qp + *s as usize) as u32, f.neg(x)));
                        }
                        rel.insert(&normalize(f, entries));
                    }
                }
            }
        }
    }
    let relations = rel.finish();
    let mut is_pivot = vec![false; total];
    for p in relations.pivots() {
        is_pivot[*p as usize] = true;
    }
    let free: Vec<u32> = (0..total as u32).filter(|i| !is_pivot[*i as usize]).collect();
    let mut quotient_index = vec![None; total];
    for (k, i) in free.iter().enumerate() {
        quotient_index[*i as usize] = Some(k as u32);
    }
    let mut tp = TensorProduct {
        module: Bimodule::zero(m.left_algebra().clone(), n.right_algebra().clone()),
        blocks,
        idem,
        relations,
        quotient_index,
        free,
    };
    let dim = tp.free.len();
    let c = m.left_algebra().clone();
    let a = n.right_algebra().clone();
    let mut left = Vec::with_capacity(c.dim());
    for i in 0..c.dim() {
        let cols = (0..dim)
            .map(|k| {
                let (mu, nv) = tp.lift_basis(k);
                tp.project(&m.act_left(i, &mu), &nv)
            })
            .collect();
        left.push(SparseMatrix::from_columns(dim, cols));
    }
    let mut right = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        let cols = (0..dim)
            .map(|k| {
                let (mu, nv) = tp.lift_basis(k);
                tp.project(&mu, &n.act_right(&nv, j))
            })
            .collect();
        right.push(SparseMatrix::from_columns(dim, cols));
    }
    tp.module = Bimodule::new(c, a, dim, left, right)?;
    Ok(tp)
}

/// Dimension of `M (x)_B N` computed on the full `M (x)_k N` modulo
/// `mb (x) n - m (x) bn` for all basis elements; an independent check of
/// `tensor_over`.
pub fn tensor_dim_plain<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<usize> {
    if !same_algebra(m.right_algebra(), n.left_algebra()) {
        return Err(Error::AlgebraMismatch("tensor product over different algebras".into()));
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let b = m.right_algebra();
    let mut cols = Vec::new();
    for j in 0..b.dim() {
        for u in 0..dm {
            let mb = m.act_right(&[(u as u32, f.one())], j);
            for v in 0..dn {
                let bn = n.act_left(j, &[(v as u32, f.one())]);
                let mut entries = Vec::new();
                for (s, x) in &mb {
                    entries.push(((*s as usize * dn + v) as u32, x.clone()));
                }
                for (s, x) in &bn {
                    entries.push(((u * dn + *s as usize) as u32, f.neg(x)));
                }
                cols.push(normalize(f, entries));
            }
        }
    }
    let mat = SparseMatrix::from_columns(dm * dn, cols);
    Ok(dm * dn - rank(f, &mat))
}
