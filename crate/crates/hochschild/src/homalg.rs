//! Resolutions of bimodules, Ext and Tor, and the Ext form of cohomology
//! along a path.

use crate::algebra::{same_algebra, tensor_over, Bimodule};
use crate::complex::{CochainComplex, BlockLabel};
use crate::complex::cochain::block_rank;
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{rank, Field, SparseMatrix, SparseVec};
use crate::qset::QSet;
use crate::trajectory::{coefficient, Coefficient, QPath};

/// A complex of vector spaces with differentials lowering the degree.
/// `diffs[n]` maps degree `n` to degree `n - 1`; `diffs[0]` is the
/// augmentation onto the resolved module.
#[derive(Clone, Debug)]
pub struct ChainComplexDown<F: Field> {
    field: F,
    dims: Vec<usize>,
    augmented_dim: usize,
    diffs: Vec<SparseMatrix<F::Elem>>,
    labels: Vec<Vec<BlockLabel>>,
}

impl<F: Field> ChainComplexDown<F> {
    pub fn new(
        field: &F,
        dims: Vec<usize>,
        augmented_dim: usize,
        diffs: Vec<SparseMatrix<F::Elem>>,
        labels: Vec<Vec<BlockLabel>>,
    ) -> Result<Self> {
        if diffs.len() != dims.len() {
            return Err(Error::Internal("one differential per degree".into()));
        }
        for n in 0..dims.len() {
            let below = if n == 0 { augmented_dim } else { dims[n - 1] };
            if diffs[n].ncols() != dims[n] || diffs[n].nrows() != below {
                return Err(Error::Internal(format!("differential {} has the wrong shape", n)));
            }
            if n > 0 && !diffs[n - 1].mul(field, &diffs[n]).is_zero() {
                return Err(Error::CompositionNotZero);
            }
        }
        Ok(ChainComplexDown { field: field.clone(), dims, augmented_dim, diffs, labels })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix<F::Elem> {
        &self.diffs[n]
    }

    pub fn labels(&self, n: usize) -> &[BlockLabel] {
        &self.labels[n]
    }

    /// Homology of the augmented complex in degrees `-1..top`: entry 0 is
    /// the cokernel of the augmentation, entry `n + 1` the homology at `n`.
    pub fn augmented_homology(&self) -> Vec<usize> {
        let f = &self.field;
        let ranks: Vec<usize> = self.diffs.iter().map(|d| rank(f, d)).collect();
        let mut out = vec![self.augmented_dim - ranks[0]];
        for n in 0..self.top() {
            out.push(self.dims[n] - ranks[n] - ranks[n + 1]);
        }
        out
    }
}

/// The resolution `... -> (+) B^q M A^p -> ... -> BMA -> M` of a bimodule,
/// the tensor product over `A` of the bar resolutions of `M` over `B` and of
/// `A`. Degree `n` holds the blocks `q + p = n + 2`, `q` increasing.
pub struct ArrowResolution<'a, F: Field> {
    m: &'a Bimodule<F>,
}

impl<'a, F: Field> ArrowResolution<'a, F> {
    pub fn new(m: &'a Bimodule<F>) -> Self {
        ArrowResolution { m }
    }

    fn sizes(&self, q: usize, p: usize) -> Vec<usize> {
        let (db, da) = (self.m.left_algebra().dim(), self.m.right_algebra().dim());
        let mut s = vec![db; q];
        s.push(self.m.dim());
        s.extend(std::iter::repeat(da).take(p));
        s
    }

    fn block_dim(&self, q: usize, p: usize) -> usize {
        self.sizes(q, p).iter().product()
    }

    /// `(q, offset, dim)` of the blocks of degree `n`.
    pub fn blocks(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        (1..=n + 1)
            .map(|q| {
                let d = self.block_dim(q, n + 2 - q);
                let b = (q, off, d);
                off += d;
                b
            })
            .collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        (1..=n + 1).map(|q| self.block_dim(q, n + 2 - q)).sum()
    }

    fn encode(&self, n: usize, q: usize, tuple: &[u32]) -> u32 {
        let (_, off, _) = self.blocks(n)[q - 1];
        (off + crate::complex::terms_encode(tuple, &self.sizes(q, n + 2 - q))) as u32
    }

    /// `(q, tuple)` of a basis element of degree `n`.
    pub fn decode(&self, n: usize, idx: usize) -> (usize, Vec<u32>) {
        for (q, off, d) in self.blocks(n) {
            if idx < off + d {
                let mut t = Vec::new();
                crate::complex::terms_decode(idx - off, &self.sizes(q, n + 2 - q), &mut t);
                return (q, t);
            }
        }
        panic!("basis index {} out of range in degree {}", idx, n)
    }

    /// Image of a basis tuple of degree `n >= 1` in degree `n - 1`.
    pub fn beta(&self, n: usize, q: usize, t: &[u32]) -> SparseVec<F::Elem> {
        let f = self.m.field();
        let b = self.m.left_algebra();
        let a = self.m.right_algebra();
        let p = n + 2 - q;
        let mut out = Vec::new();
        let mut push = |qq: usize, tuple: Vec<u32>, c: F::Elem| out.push((self.encode(n - 1, qq, &tuple), c));
        if q >= 2 {
            for i in 0..q - 1 {
                let sign = if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                for (l, c) in b.mul_basis(t[i] as usize, t[i + 1] as usize) {
                    let mut u = t[..i].to_vec();
                    u.push(*l);
                    u.extend_from_slice(&t[i + 2..]);
                    push(q - 1, u, f.mul(&sign, c));
                }
            }
            let sign = if q % 2 == 1 { f.one() } else { f.neg(&f.one()) };
            let e = [(t[q] , f.one())];
            for (l, c) in self.m.act_left(t[q - 1] as usize, &e) {
                let mut u = t[..q - 1].to_vec();
                u.push(l);
                u.extend_from_slice(&t[q + 1..]);
                push(q - 1, u, f.mul(&sign, &c));
            }
        }
        if p >= 2 {
            let outer = if q % 2 == 1 { f.one() } else { f.neg(&f.one()) };
            let e = [(t[q], f.one())];
            for (l, c) in self.m.act_right(&e, t[q + 1] as usize) {
                let mut u = t[..q].to_vec();
                u.push(l);
                u.extend_from_slice(&t[q + 2..]);
                push(q, u, f.mul(&outer, &c));
            }
            for j in 1..p {
                let s = if j % 2 == 0 { outer.clone() } else { f.neg(&outer) };
                let k = q + j;
                for (l, c) in a.mul_basis(t[k] as usize, t[k + 1] as usize) {
                    let mut u = t[..k].to_vec();
                    u.push(*l);
                    u.extend_from_slice(&t[k + 2..]);
                    push(q, u, f.mul(&s, c));
                }
            }
        }
        normalize(f, out)
    }

    /// `b m a`.
    pub fn augment(&self, t: &[u32]) -> SparseVec<F::Elem> {
        let f = self.m.field();
        let bm = self.m.act_left(t[0] as usize, &[(t[1], f.one())]);
        self.m.act_right(&bm, t[2] as usize)
    }

    /// The resolution in degrees `0..=n_max` with its augmentation.
    pub fn complex(&self, n_max: usize) -> Result<ChainComplexDown<F>> {
        let f = self.m.field();
        let dims: Vec<usize> = (0..=n_max).map(|n| self.dim(n)).collect();
        let mut diffs = Vec::new();
        let aug = (0..dims[0]).map(|i| self.augment(&self.decode(0, i).1)).collect();
        diffs.push(SparseMatrix::from_columns(self.m.dim(), aug));
        for n in 1..=n_max {
            let cols = (0..dims[n])
                .map(|i| {
                    let (q, t) = self.decode(n, i);
                    self.beta(n, q, &t)
                })
                .collect();
            diffs.push(SparseMatrix::from_columns(dims[n - 1], cols));
        }
        let labels = (0..=n_max)
            .map(|n| {
                self.blocks(n)
                    .into_iter()
                    .map(|(q, offset, dim)| BlockLabel { label: format!("B^{} M A^{}", q, n + 2 - q), offset, dim })
                    .collect()
            })
            .collect();
        ChainComplexDown::new(f, dims, self.m.dim(), diffs, labels)
    }
}

/// The resolution of `M` in degrees `0..=n_max`.
pub fn arrow_resolution<F: Field>(m: &Bimodule<F>, n_max: usize) -> Result<ChainComplexDown<F>> {
    ArrowResolution::new(m).complex(n_max)
}

/// `Hom_{B-A}` of the resolution of `m` into `x`, written on the generators:
/// degree `r` is `(+)_{u + v = r} Hom_k(B^u M A^v, X)`, in degrees `0..=top`.
pub fn ext_complex<F: Field>(m: &Bimodule<F>, x: &Bimodule<F>, top: usize) -> Result<CochainComplex<F>> {
    if !same_algebra(m.left_algebra(), x.left_algebra()) || !same_algebra(m.right_algebra(), x.right_algebra()) {
        return Err(Error::AlgebraMismatch("Ext between bimodules over different algebras".into()));
    }
    let f = m.field();
    let res = ArrowResolution::new(m);
    let b = m.left_algebra();
    let a = m.right_algebra();
    let dx = x.dim();
    // generators of degree r: the tuples of the block (q, p) with outer factors removed
    let gen_blocks = |r: usize| -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        (0..=r)
            .map(|u| {
                let d = res.block_dim(u + 1, r - u + 1) / (b.dim() * a.dim()) * dx;
                let out = (u, off, d);
                off += d;
                out
            })
            .collect()
    };
    let gen_sizes = |u: usize, v: usize| -> Vec<usize> {
        let mut s = vec![b.dim(); u];
        s.push(m.dim());
        s.extend(std::iter::repeat(a.dim()).take(v));
        s
    };
    let dims: Vec<usize> = (0..=top).map(|r| gen_blocks(r).iter().map(|g| g.2).sum()).collect();
    // (b_1 x a_p) for all basis x, as matrices keyed by (b_1, a_p)
    let act = |bi: usize, aj: usize, xi: usize| -> SparseVec<F::Elem> {
        let bx = x.act_left(bi, &[(xi as u32, f.one())]);
        x.act_right(&bx, aj)
    };
    let mut diffs = Vec::new();
    for r in 0..top {
        let mut triplets = Vec::new();
        let cols_blocks = gen_blocks(r);
        for (u, off, d) in gen_blocks(r + 1) {
            let v = r + 1 - u;
            let sizes = gen_sizes(u, v);
            let ny = d / dx;
            let mut y = Vec::new();
            for yi in 0..ny {
                crate::complex::terms_decode(yi, &sizes, &mut y);
                // beta(1 y 1), expanding the units
                let mut image: Vec<(u32, F::Elem)> = Vec::new();
                for (ub, cb) in b.unit() {
                    for (ua, ca) in a.unit() {
                        let mut t = vec![*ub];
                        t.extend_from_slice(&y);
                        t.push(*ua);
                        let c = f.mul(cb, ca);
                        for (k, e) in res.beta(r + 1, u + 1, &t) {
                            image.push((k, f.mul(&c, &e)));
                        }
                    }
                }
                for (k, c) in normalize(f, image) {
                    let (q, t) = res.decode(r, k as usize);
                    let (b1, ap) = (t[0] as usize, *t.last().unwrap() as usize);
                    let inner = &t[1..t.len() - 1];
                    let (_, coff, _) = cols_blocks[q - 1];
                    let gi = crate::complex::terms_encode(inner, &gen_sizes(q - 1, r + 1 - q));
                    for xi in 0..dx {
                        for (xo, e) in act(b1, ap, xi) {
                            triplets.push((off + yi * dx + xo as usize, coff + gi * dx + xi, f.mul(&c, &e)));
                        }
                    }
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(f, dims[r + 1], dims[r], triplets));
    }
    let labels = (0..=top)
        .map(|r| {
            gen_blocks(r)
                .into_iter()
                .map(|(u, offset, dim)| BlockLabel { label: format!("B^{} M A^{}", u, r - u), offset, dim })
                .collect()
        })
        .collect();
    CochainComplex::new(f, dims, diffs, None, Some(labels))
}

/// `dim Ext^r_{B-A}(M, X)` for `r = 0..=r_max`.
pub fn ext_bimodule<F: Field>(m: &Bimodule<F>, x: &Bimodule<F>, r_max: usize) -> Result<Vec<usize>> {
    Ok(ext_complex(m, x, r_max + 1)?.cohomology_dims())
}

/// `dim Tor_n^B(M, N)` for `n = 0..=n_max`, from `M (x)_B` the bar
/// resolution of `N` as a left module: `M (x) B^n (x) N`.
pub fn tor_over<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, n_max: usize) -> Result<Vec<usize>> {
    if !same_algebra(m.right_algebra(), n.left_algebra()) {
        return Err(Error::AlgebraMismatch("Tor over different algebras".into()));
    }
    let f = m.field();
    let b = n.left_algebra();
    let (dm, db, dn) = (m.dim(), b.dim(), n.dim());
    let sizes = |s: usize| -> Vec<usize> {
        let mut v = vec![dm];
        v.extend(std::iter::repeat(db).take(s));
        v.push(dn);
        v
    };
    let dim = |s: usize| -> usize { sizes(s).iter().product() };
    let encode = |s: usize, t: &[u32]| crate::complex::terms_encode(t, &sizes(s)) as u32;
    // ranks of d_s: degree s -> s - 1, for s = 1..=n_max + 1
    let ranks: Vec<usize> = (1..=n_max + 1)
        .map(|s| {
            let mut t = Vec::new();
            let cols: Vec<SparseVec<F::Elem>> = (0..dim(s))
                .map(|i| {
                    crate::complex::terms_decode(i, &sizes(s), &mut t);
                    let mut out = Vec::new();
                    for (l, c) in m.act_right(&[(t[0], f.one())], t[1] as usize) {
                        let mut u = vec![l];
                        u.extend_from_slice(&t[2..]);
                        out.push((encode(s - 1, &u), c));
                    }
                    for i in 1..s {
                        for (l, c) in b.mul_basis(t[i] as usize, t[i + 1] as usize) {
                            let mut u = t[..i].to_vec();
                            u.push(*l);
                            u.extend_from_slice(&t[i + 2..]);
                            let c = if i % 2 == 1 { f.neg(c) } else { c.clone() };
                            out.push((encode(s - 1, &u), c));
                        }
                    }
                    for (l, c) in n.act_left(t[s] as usize, &[(t[s + 1], f.one())]) {
                        let mut u = t[..s].to_vec();
                        u.push(l);
                        let c = if s % 2 == 1 { f.neg(&c) } else { c };
                        out.push((encode(s - 1, &u), c));
                    }
                    normalize(f, out)
                })
                .collect();
            block_rank(f, dim(s - 1), cols)
        })
        .collect();
    Ok((0..=n_max).map(|s| dim(s) - ranks[s] - if s > 0 { ranks[s - 1] } else { 0 }).collect())
}

/// The bimodule `M_{a_m} (x) ... (x) M_{a_1}` along a path of positive length.
pub fn path_bimodule<F: Field>(delta: &QSet<F>, w: &QPath) -> Result<Bimodule<F>> {
    // arrows are stored in written order, the last one applied first
    let mut it = w.arrows.iter().rev();
    let first = it.next().ok_or_else(|| Error::Input("the path has no arrows".into()))?;
    let mut acc = delta.bimodule(*first).clone();
    for a in it {
        acc = tensor_over(delta.bimodule(*a), &acc)?.module;
    }
    Ok(acc)
}

/// Result of a Tor-vanishing check, verified up to a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorVanishing {
    /// Verified to vanish in degrees `1..=degree`.
    Verified { degree: usize },
    /// `Tor_degree` at factor `factor` (counted from 1 along the path) is nonzero.
    Fails { factor: usize, degree: usize },
}

impl TorVanishing {
    pub fn holds(&self) -> bool {
        matches!(self, TorVanishing::Verified { .. })
    }
}

/// Checks `Tor_n(M_{a_i}, M_{a_{i-1} ... a_1}) = 0` for `i = 2..=m`, `1 <= n <= n_max`.
pub fn tor_vanishing<F: Field>(delta: &QSet<F>, w: &QPath, n_max: usize) -> Result<TorVanishing> {
    let arrows: Vec<usize> = w.arrows.iter().rev().copied().collect();
    if arrows.len() < 2 {
        return Err(Error::Input("Tor vanishing is defined for paths of length at least two".into()));
    }
    let mut acc = delta.bimodule(arrows[0]).clone();
    for (k, a) in arrows.iter().enumerate().skip(1) {
        let next = delta.bimodule(*a);
        let tor = tor_over(next, &acc, n_max)?;
        if let Some(n) = (1..=n_max).find(|n| tor[*n] != 0) {
            return Ok(TorVanishing::Fails { factor: k + 1, degree: n });
        }
        acc = tensor_over(next, &acc)?.module;
    }
    Ok(TorVanishing::Verified { degree: n_max })
}

/// Dimensions of cohomology along `w` in degrees `m..=m + r_max`, as
/// `Ext^r(M_w, Delta_w)`. Paths of length two or more must be Tor vanishing
/// up to degree `r_max + 1`.
pub fn along_path_via_ext<F: Field>(delta: &QSet<F>, w: &QPath, r_max: usize) -> Result<Vec<usize>> {
    if w.is_empty() {
        return Err(Error::Input("the path has no arrows".into()));
    }
    if w.len() >= 2 {
        if let TorVanishing::Fails { factor, degree } = tor_vanishing(delta, w, r_max + 1)? {
            return Err(Error::TorHypothesisFails { factor, degree });
        }
    }
    let target = match coefficient(delta.quiver(), w) {
        Coefficient::Zero => return Ok(vec![0; r_max + 1]),
        Coefficient::Arrow(c) => delta.bimodule(c).clone(),
        Coefficient::Vertex(x) => Bimodule::regular(delta.algebra(x).clone()),
    };
    let mw = path_bimodule(delta, w)?;
    if mw.is_zero() {
        return Ok(vec![0; r_max + 1]);
    }
    ext_bimodule(&mw, &target, r_max)
}
