//! Null-square projective algebras: the five-term sequences and the
//! Hochschild cohomology through the restricted connecting map.

use super::cup::{cup, unit_on_arrows};
use super::les::CohomologySequence;
use crate::complex::{bar_hochschild, partial_complex, RelativeComplex};
use crate::error::{Error, Result};
use crate::exactla::sparse::axpy;
use crate::exactla::{kernel_basis, rank, Field, SparseMatrix, SparseVec, Subspace};
use crate::homalg::ext_bimodule;
use crate::qset::{free_rank_one, SquareData};
use crate::algebra::Bimodule;

/// Checks `Ext^r(X, X) = 0` and `Ext^r(X, B ⊗ A) = 0` for `1 <= r <= cap`
/// on both corner bimodules.
pub fn certify_projective<F: Field>(sq: &SquareData<F>, cap: usize) -> Result<()> {
    let cap = cap.max(1);
    let probe = |name: &str, x: &Bimodule<F>| -> Result<()> {
        let free = free_rank_one(x.left_algebra(), x.right_algebra())?;
        for (target, what) in [(x, "itself"), (&free, "the free bimodule")] {
            let ext = ext_bimodule(x, target, cap)?;
            if let Some(r) = (1..=cap).find(|r| ext[*r] != 0) {
                return Err(Error::NotProjective(format!("Ext^{} of {} into {} is {}", r, name, what, ext[r])));
            }
        }
        Ok(())
    };
    probe("M", &sq.m)?;
    probe("N", &sq.n)
}

fn require_null<F: Field>(sq: &SquareData<F>) -> Result<()> {
    if !sq.is_null() {
        return Err(Error::Input("the square has nonzero corner products".into()));
    }
    Ok(())
}

/// The five-term exact sequence at level `m`:
/// `0 -> HH^{2m} -> H^{2m}(C) -> H^{2m+1}(D) -> HH^{2m+1} -> H^{2m+1}(C) -> 0`.
/// For `m > 0` the quotient node is `HH^{2m}(A × B) ⊕ Hom(M^{2m}, A × B)`
/// and the subcomplex node `Hom(M^{2m+1}, M)`; for `m = 0` they are the
/// centers and the bimodule endomorphisms.
#[derive(Clone, Debug)]
pub struct FiveTerm<E> {
    pub level: usize,
    pub labels: [String; 5],
    pub dims: [usize; 5],
    pub maps: [SparseMatrix<E>; 4],
    pub exact: bool,
}

impl<E> FiveTerm<E> {
    pub fn alternating_sum(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, d)| if i % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum()
    }
}

/// Builds the five-term sequence at level `m` from the long exact sequence,
/// after certifying projectivity up to degree `cap`.
pub fn five_term<F: Field>(sq: &SquareData<F>, m: usize, cap: usize) -> Result<FiveTerm<F::Elem>> {
    require_null(sq)?;
    certify_projective(sq, cap)?;
    let delta = sq.qset()?;
    let (lo, hi) = (2 * m, 2 * m + 1);
    let seq = CohomologySequence::new(&delta, hi + 1)?;
    let f = seq.field();
    if seq.noncycle.dims[lo] != 0 || seq.noncycle.dims[hi + 1] != 0 {
        return Err(Error::Internal("even degree subcomplex cohomology of a projective square is not zero".into()));
    }
    let maps = [seq.projection_map(lo)?, seq.connecting_snake(lo)?, seq.inclusion_map(hi)?, seq.projection_map(hi)?];
    let dims = [seq.total.dims[lo], seq.cycle.dims[lo], seq.noncycle.dims[hi], seq.total.dims[hi], seq.cycle.dims[hi]];
    let ranks: Vec<usize> = maps.iter().map(|a| rank(f, a)).collect();
    let composable = (0..3).all(|i| maps[i + 1].mul(f, &maps[i]).is_zero());
    let exact = composable
        && ranks[0] == dims[0]
        && ranks[0] + ranks[1] == dims[1]
        && ranks[1] + ranks[2] == dims[2]
        && ranks[2] + ranks[3] == dims[3]
        && ranks[3] == dims[4];
    if !exact {
        return Err(Error::ExactnessFailure(format!("five-term sequence at level {}", m)));
    }
    let labels = if m == 0 {
        ["HH^0".to_string(), "Z(A)+Z(B)".into(), "End(M)".into(), "HH^1".into(), "HH^1(A)+HH^1(B)".into()]
    } else {
        [
            format!("HH^{}", lo),
            format!("HH^{lo}(A)+HH^{lo}(B)+Hom(M^{lo},A+B)"),
            format!("Hom(M^{hi},M)"),
            format!("HH^{}", hi),
            format!("HH^{hi}(A)+HH^{hi}(B)"),
        ]
    };
    Ok(FiveTerm { level: m, labels, dims, maps, exact })
}

/// The connecting map restricted to `Hom(M^{2m}, A × B) -> Hom(M^{2m+1}, M)`
/// (for `m = 0`: centers to bimodule endomorphisms), as a matrix in bases of
/// the two Hom spaces.
#[derive(Clone, Debug)]
pub struct RestrictedNabla<E> {
    pub level: usize,
    pub domain: usize,
    pub codomain: usize,
    pub matrix: SparseMatrix<E>,
    pub rank: usize,
}

impl<E> RestrictedNabla<E> {
    pub fn kernel(&self) -> usize {
        self.domain - self.rank
    }

    pub fn cokernel(&self) -> usize {
        self.codomain - self.rank
    }
}

/// Bimodule maps on the zero-waiting blocks of the chosen paths in degree `n`:
/// the kernel of the differential restricted to those blocks, in full coordinates.
fn hom_space<F: Field>(j: &RelativeComplex<F>, n: usize, on: impl Fn(&crate::complex::Block) -> bool) -> Subspace<F::Elem> {
    let f = j.complex.field();
    let idx = j.layout.select(n, |b| b.trajectory.total_waiting_time() == 0 && on(b));
    let d = j.complex.differential(n).select_columns(&idx);
    let k = kernel_basis(f, &d);
    let vecs: Vec<SparseVec<F::Elem>> =
        k.basis().iter().map(|v| v.iter().map(|(i, c)| (idx[*i as usize] as u32, c.clone())).collect()).collect();
    Subspace::from_spanning(f, j.complex.dim(n), &vecs)
}

/// `∇'` at level `m`, from `1_M ⌣ f - f ⌣ 1_M` on the Hom spaces.
pub fn restricted_nabla<F: Field>(sq: &SquareData<F>, m: usize) -> Result<RestrictedNabla<F::Elem>> {
    require_null(sq)?;
    let delta = sq.qset()?;
    let (lo, hi) = (2 * m, 2 * m + 1);
    let j = partial_complex(&delta, hi + 1, |t| {
        let len = t.path.len();
        let n = t.duration();
        (len == lo && (n == lo || n == lo + 1)) || (len == hi && (n == hi || n == hi + 1)) || (len == 1 && n == 1)
    })?;
    let f = j.complex.field();
    let domain = hom_space(&j, lo, |b| b.trajectory.path.len() == lo);
    let codomain = hom_space(&j, hi, |b| b.trajectory.path.len() == hi);
    let unit = unit_on_arrows(&j)?;
    let minus = f.from_i64(-1);
    let mut cols = Vec::with_capacity(domain.dim());
    for v in domain.basis() {
        let left = cup(&j, 1, &unit, lo, v)?;
        let right = cup(&j, lo, v, 1, &unit)?;
        let w = axpy(f, &left, &minus, &right);
        if !codomain.contains(f, &w) {
            return Err(Error::Internal("restricted connecting map leaves the bimodule maps".into()));
        }
        cols.push(codomain.coords(&w));
    }
    let matrix = SparseMatrix::from_columns(codomain.dim(), cols);
    let r = rank(f, &matrix);
    Ok(RestrictedNabla { level: m, domain: domain.dim(), codomain: codomain.dim(), matrix, rank: r })
}

/// Hochschild cohomology of a null-square projective algebra in degrees
/// `0..=2 m_max + 1` from the cohomology of the diagonal algebras and `∇'`.
#[derive(Clone, Debug)]
pub struct NullSquareHH<E> {
    pub diagonal_a: Vec<usize>,
    pub diagonal_b: Vec<usize>,
    pub levels: Vec<RestrictedNabla<E>>,
    pub dims: Vec<usize>,
}

pub fn null_square_hh<F: Field>(sq: &SquareData<F>, m_max: usize, budget: u64) -> Result<NullSquareHH<F::Elem>> {
    require_null(sq)?;
    certify_projective(sq, 1)?;
    let top = 2 * m_max + 1;
    let ha = bar_hochschild(&sq.a, top, budget)?;
    let hb = bar_hochschild(&sq.b, top, budget)?;
    let mut levels = Vec::new();
    let mut dims = Vec::new();
    for m in 0..=m_max {
        let nabla = restricted_nabla(sq, m)?;
        let (lo, hi) = (2 * m, 2 * m + 1);
        if m == 0 {
            dims.push(nabla.kernel());
        } else {
            dims.push(ha[lo] + hb[lo] + nabla.kernel());
        }
        dims.push(nabla.cokernel() + ha[hi] + hb[hi]);
        levels.push(nabla);
    }
    Ok(NullSquareHH { diagonal_a: ha, diagonal_b: hb, levels, dims })
}

/// Predicted dimensions for free rank one corners `M = B ⊗ A`, `N = A ⊗ B`
/// with `(dim A, dim B) != (1, 1)`, in degrees `0..=top`. The center is the
/// scalars on the diagonal, since `b ⊗ 1 = 1 ⊗ a` in `B ⊗ A` forces `a = b ∈ k`.
pub fn free_rank_one_dims(dim_a: usize, dim_b: usize, hh_a: &[usize], hh_b: &[usize], top: usize) -> Vec<usize> {
    let p = dim_a * dim_b;
    (0..=top)
        .map(|n| match n {
            0 => 1,
            1 => (hh_a[1] + hh_b[1] + 2 * p + 1).saturating_sub(hh_a[0] + hh_b[0]),
            _ if n % 2 == 0 => hh_a[n] + hh_b[n],
            _ => {
                let m = (n - 1) / 2;
                hh_a[n] + hh_b[n] + 2 * p.pow(m as u32) * (p - 1)
            }
        })
        .collect()
}
