use super::elim::Echelon;
use super::field::Field;
use super::sparse::{get, normalize, SparseMatrix, SparseVec};

/// A linear subspace given by its reduced echelon basis.
///
/// Basis vectors are sorted by leading index (the pivot), have a one at
/// their pivot and zeros at every other pivot, so the basis is unique.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<SparseVec<E>>,
    pivots: Vec<u32>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    /// Wraps vectors that are already in reduced echelon form.
    pub fn from_reduced(ambient: usize, basis: Vec<SparseVec<E>>) -> Self {
        let pivots: Vec<u32> = basis.iter().map(|v| v[0].0).collect();
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Basis vectors as the columns of a matrix.
    pub fn basis_matrix(&self) -> SparseMatrix<E> {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    /// Coefficients of `v` in the basis, read off at the pivots. Meaningful
    /// only when `v` lies in the subspace (or has been reduced into it).
    pub fn coords(&self, v: &[(u32, E)]) -> Vec<(u32, E)> {
        let mut out = Vec::new();
        for (k, p) in self.pivots.iter().enumerate() {
            if let Some(x) = get(v, *p) {
                out.push((k as u32, x.clone()));
            }
        }
        out
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static> Subspace<E> {
    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let basis = (0..ambient as u32).map(|i| vec![(i, f.one())]).collect();
        Subspace { ambient, basis, pivots: (0..ambient as u32).collect() }
    }

    pub fn from_spanning<F: Field<Elem = E>>(f: &F, ambient: usize, vecs: &[SparseVec<E>]) -> Self {
        let mut e = Echelon::new(f, ambient);
        for v in vecs {
            e.insert(v);
        }
        e.finish()
    }

    /// `v` minus its component along the basis: the canonical representative
    /// of `v` modulo this subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[(u32, E)]) -> SparseVec<E> {
        let mut entries: Vec<(u32, E)> = v.to_vec();
        for (k, p) in self.pivots.iter().enumerate() {
            if let Some(x) = get(v, *p) {
                let neg = f.neg(x);
                entries.extend(self.basis[k].iter().map(|(i, y)| (*i, f.mul(&neg, y))));
            }
        }
        normalize(f, entries)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[(u32, E)]) -> bool {
        self.reduce(f, v).is_empty()
    }

    pub fn contains_subspace<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(f, v))
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::from_spanning(f, self.ambient, &all)
    }

    /// Element of the subspace with the given coordinates.
    pub fn combine<F: Field<Elem = E>>(&self, f: &F, coords: &[(u32, E)]) -> SparseVec<E> {
        let mut entries = Vec::new();
        for (k, c) in coords {
            entries.extend(self.basis[*k as usize].iter().map(|(i, y)| (*i, f.mul(c, y))));
        }
        normalize(f, entries)
    }
}
