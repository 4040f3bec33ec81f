use std::collections::HashMap;

use crate::algebra::FinDimAlgebra;
use crate::exactla::Field;

/// Multiplication of an algebra indexed for the coboundary formula.
pub(crate) struct Tables<E> {
    /// `left[y]`: all `(z, l, c)` with `z * y = ... + c l`.
    pub left: Vec<Vec<(u32, u32, E)>>,
    /// `right[y]`: all `(z, l, c)` with `y * z = ... + c l`.
    pub right: Vec<Vec<(u32, u32, E)>>,
    /// `pre[l]`: all `(p, r, c)` with `p * r = ... + c l`.
    pub pre: Vec<Vec<(u32, u32, E)>>,
}

impl<E: Clone> Tables<E> {
    pub fn new<F: Field<Elem = E>>(a: &FinDimAlgebra<F>) -> Self {
        let d = a.dim();
        let mut left = vec![Vec::new(); d];
        let mut right = vec![Vec::new(); d];
        let mut pre = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                for (l, c) in a.mul_basis(i, j) {
                    left[j].push((i as u32, *l, c.clone()));
                    right[i].push((j as u32, *l, c.clone()));
                    pre[*l as usize].push((i as u32, j as u32, c.clone()));
                }
            }
        }
        Tables { left, right, pre }
    }
}

/// Calls `emit(row_tuple, row_output, coefficient)` for every term of the
/// coboundary of the cochain sending the basis tuple `x` to the basis
/// element `y` and every other tuple to zero. Terms are not merged.
pub(crate) fn for_each_term<F: Field>(
    f: &F,
    t: &Tables<F::Elem>,
    x: &[u32],
    y: u32,
    buf: &mut Vec<u32>,
    mut emit: impl FnMut(&[u32], u32, F::Elem),
) {
    let n = x.len();
    for (z, l, c) in &t.left[y as usize] {
        buf.clear();
        buf.push(*z);
        buf.extend_from_slice(x);
        emit(buf, *l, c.clone());
    }
    for i in 1..=n {
        for (p, r, c) in &t.pre[x[i - 1] as usize] {
            buf.clear();
            buf.extend_from_slice(&x[..i - 1]);
            buf.push(*p);
            buf.push(*r);
            buf.extend_from_slice(&x[i..]);
            let c = if i % 2 == 1 { f.neg(c) } else { c.clone() };
            emit(buf, y, c);
        }
    }
    for (z, l, c) in &t.right[y as usize] {
        buf.clear();
        buf.extend_from_slice(x);
        buf.push(*z);
        let c = if n % 2 == 0 { f.neg(c) } else { c.clone() };
        emit(buf, *l, c);
    }
}

/// Interns the weights `w(y) - sum w(x_i)` of basis cochains.
pub(crate) struct WeightInterner {
    basis: Vec<Vec<i64>>,
    ids: HashMap<Vec<i64>, u32>,
}

impl WeightInterner {
    pub fn new<F: Field>(a: &FinDimAlgebra<F>) -> Self {
        WeightInterner { basis: a.universal_grading(), ids: HashMap::new() }
    }

    pub fn weight(&self, x: &[u32], y: u32) -> Vec<i64> {
        let mut w = self.basis[y as usize].clone();
        for xi in x {
            for (a, b) in w.iter_mut().zip(&self.basis[*xi as usize]) {
                *a -= b;
            }
        }
        w
    }

    pub fn id(&mut self, x: &[u32], y: u32) -> u32 {
        let w = self.weight(x, y);
        let next = self.ids.len() as u32;
        *self.ids.entry(w).or_insert(next)
    }
}

/// Decodes a row-major index into a tuple over the given factor sizes.
pub(crate) fn decode(mut idx: usize, sizes: &[usize], out: &mut Vec<u32>) {
    out.clear();
    out.resize(sizes.len(), 0);
    for k in (0..sizes.len()).rev() {
        out[k] = (idx % sizes[k]) as u32;
        idx /= sizes[k];
    }
}

pub(crate) fn encode(tuple: &[u32], sizes: &[usize]) -> usize {
    tuple.iter().zip(sizes).fold(0, |acc, (t, s)| acc * s + *t as usize)
}
