//! Cup products of relative cochains.

use crate::complex::RelativeComplex;
use crate::error::{Error, Result};
use crate::exactla::sparse::{axpy, normalize};
use crate::exactla::{Field, SparseVec};
use crate::qset::Origin;
use crate::trajectory::{QPath, Trajectory};

struct Entry<E> {
    tuple: Vec<u32>,
    out: u32,
    coef: E,
}

fn decode_all<F: Field>(j: &RelativeComplex<F>, n: usize, v: &[(u32, F::Elem)]) -> Vec<Entry<F::Elem>> {
    v.iter()
        .map(|(i, c)| {
            let b = j.layout.block_of(n, *i as usize);
            let mut tuple = Vec::new();
            let out = b.decode(*i as usize - b.offset, &mut tuple);
            Entry { tuple, out, coef: c.clone() }
        })
        .collect()
}

/// `(f ⌣ g)(x_1 .. x_{p+q}) = f(x_1 .. x_p) g(x_{p+1} .. x_{p+q})` for
/// cochains of degrees `p` and `q` of the same relative complex.
pub fn cup<F: Field>(
    j: &RelativeComplex<F>,
    p: usize,
    f: &[(u32, F::Elem)],
    q: usize,
    g: &[(u32, F::Elem)],
) -> Result<SparseVec<F::Elem>> {
    let n = p + q;
    if n > j.complex.top() {
        return Err(Error::Input(format!("cup product of degree {} above the top degree {}", n, j.complex.top())));
    }
    let fld = j.complex.field();
    let quiver = j.delta.quiver();
    let alg = &j.lambda.algebra;
    let left = decode_all(j, p, f);
    let right = decode_all(j, q, g);
    let mut entries = Vec::new();
    let mut tuple = Vec::with_capacity(n);
    let mut origins = Vec::with_capacity(n);
    for a in &left {
        for b in &right {
            let prod = alg.mul_basis(a.out as usize, b.out as usize);
            if prod.is_empty() {
                continue;
            }
            tuple.clear();
            tuple.extend_from_slice(&a.tuple);
            tuple.extend_from_slice(&b.tuple);
            origins.clear();
            origins.extend(tuple.iter().map(|z| j.lambda.origin(*z as usize)));
            let ab = fld.mul(&a.coef, &b.coef);
            for (l, c) in prod {
                let empty_at = match j.lambda.origin(*l as usize) {
                    Origin::Vertex(v) => Some(v),
                    Origin::Arrow(_) => None,
                };
                let row = Trajectory::from_factors(quiver, &origins, empty_at)
                    .and_then(|sigma| j.layout.locate(&j.lambda, n, &sigma, &tuple, *l));
                match row {
                    Some(r) => entries.push((r as u32, fld.mul(&ab, c))),
                    None => return Err(Error::Internal("cup product term has no block".into())),
                }
            }
        }
    }
    Ok(normalize(fld, entries))
}

/// The degree one cochain that is the identity on every arrow bimodule.
pub fn unit_on_arrows<F: Field>(j: &RelativeComplex<F>) -> Result<SparseVec<F::Elem>> {
    let fld = j.complex.field();
    let q = j.delta.quiver();
    let mut out = Vec::new();
    for a in 0..q.num_arrows() {
        let t = Trajectory::new(QPath::from_arrows(q, vec![a])?, vec![0, 0]);
        let Some(b) = j.layout.find(1, &t) else {
            continue;
        };
        let d = b.coefficient_dim;
        out.extend((0..d).map(|k| ((b.offset + k * d + k) as u32, fld.one())));
    }
    Ok(normalize(fld, out))
}

/// `d(f ⌣ g) - df ⌣ g - (-1)^p f ⌣ dg`, zero by the graded Leibniz rule.
pub fn leibniz_defect<F: Field>(
    j: &RelativeComplex<F>,
    p: usize,
    f: &[(u32, F::Elem)],
    q: usize,
    g: &[(u32, F::Elem)],
) -> Result<SparseVec<F::Elem>> {
    let fld = j.complex.field();
    let lhs = j.complex.apply(p + q, &cup(j, p, f, q, g)?);
    let df = j.complex.apply(p, f);
    let dg = j.complex.apply(q, g);
    let first = cup(j, p + 1, &df, q, g)?;
    let second = cup(j, p, f, q + 1, &dg)?;
    let sign = if p % 2 == 0 { fld.one() } else { fld.from_i64(-1) };
    let minus = fld.from_i64(-1);
    let r = axpy(fld, &lhs, &minus, &first);
    Ok(axpy(fld, &r, &fld.neg(&sign), &second))
}

/// Composition along an arrow `a`: for cochains on the trajectories
/// `t(a)^p, a, s(a)^0` and `t(a)^q, a, s(a)^0`, read as maps
/// `B^p ⊗ M → M`, `(g ⋆ h)(b_1 .. b_{p+q}, m) = g(b_1 .. b_p, h(b_{p+1} .. b_{p+q}, m))`.
/// Entries of `g` or `h` on other blocks are rejected.
pub fn compose_along_arrow<F: Field>(
    j: &RelativeComplex<F>,
    a: usize,
    p: usize,
    g: &[(u32, F::Elem)],
    q: usize,
    h: &[(u32, F::Elem)],
) -> Result<SparseVec<F::Elem>> {
    let fld = j.complex.field();
    let quiver = j.delta.quiver();
    let w = QPath::from_arrows(quiver, vec![a])?;
    let block = |n: usize| j.layout.find(n + 1, &Trajectory::new(w.clone(), vec![n, 0]));
    let (Some(bg), Some(bh), Some(bo)) = (block(p), block(q), block(p + q)) else {
        return Err(Error::Input("composition along an arrow outside the complex".into()));
    };
    let d = bo.coefficient_dim;
    let inside = |v: &[(u32, F::Elem)], b: &crate::complex::Block| {
        v.iter().all(|(i, _)| (*i as usize) >= b.offset && (*i as usize) < b.offset + b.dim)
    };
    if !inside(g, bg) || !inside(h, bh) {
        return Err(Error::Input("cochain is not supported on the arrow block".into()));
    }
    // h as (tail, m) -> out, g as (head, m) -> out; tuples are in the block's local coordinates
    let right_size: usize = bh.factor_dims[..q].iter().product();
    let mut out = Vec::new();
    for (ih, ch) in h {
        let local = *ih as usize - bh.offset;
        let (tuple, o) = (local / d, local % d);
        let (tail, m) = (tuple / d, tuple % d);
        for (ig, cg) in g {
            let local_g = *ig as usize - bg.offset;
            let (tuple_g, o2) = (local_g / d, local_g % d);
            let (head, m2) = (tuple_g / d, tuple_g % d);
            if m2 != o {
                continue;
            }
            let joined = (head * right_size + tail) * d + m;
            out.push(((bo.offset + joined * d + o2) as u32, fld.mul(cg, ch)));
        }
    }
    Ok(normalize(fld, out))
}
