//! The long exact sequence of the non-cycle subcomplex, the relative
//! complex and the cycle quotient, with its connecting map computed twice.

use rayon::prelude::*;

use super::cup::{cup, unit_on_arrows};
use crate::complex::{along_path_complex, relative_complex, split_noncycle, CohomologyResult, NoncycleSplit, RelativeComplex};
use crate::error::{Error, Result};
use crate::exactla::sparse::{axpy, normalize};
use crate::exactla::{rank, Field, SparseMatrix, SparseVec};
use crate::qset::QSet;
use crate::trajectory::enumerate_paths;

/// The relative complex with its non-cycle split and the cohomology of all
/// three complexes, exact in degrees `0..=n_max`.
pub struct CohomologySequence<F: Field> {
    pub relative: RelativeComplex<F>,
    pub split: NoncycleSplit<F>,
    pub noncycle: CohomologyResult<F::Elem>,
    pub total: CohomologyResult<F::Elem>,
    pub cycle: CohomologyResult<F::Elem>,
    n_max: usize,
    // position of each full index among the non-cycle indices
    noncycle_pos: Vec<Vec<Option<u32>>>,
}

impl<F: Field> CohomologySequence<F> {
    pub fn new(delta: &QSet<F>, n_max: usize) -> Result<Self> {
        let relative = relative_complex(delta, n_max)?;
        let split = split_noncycle(&relative)?;
        let (noncycle, (total, cycle)) =
            rayon::join(|| split.noncycle.cohomology(), || rayon::join(|| relative.complex.cohomology(), || split.cycle.cohomology()));
        let noncycle_pos = split
            .noncycle_index
            .iter()
            .enumerate()
            .map(|(n, idx)| {
                let mut pos = vec![None; relative.complex.dim(n)];
                for (k, i) in idx.iter().enumerate() {
                    pos[*i] = Some(k as u32);
                }
                pos
            })
            .collect();
        Ok(CohomologySequence { relative, split, noncycle, total, cycle, n_max, noncycle_pos })
    }

    pub fn field(&self) -> &F {
        self.relative.complex.field()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// A quotient cochain as a cochain of the relative complex.
    pub fn lift_cycle(&self, n: usize, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let idx = &self.split.cycle_index[n];
        v.iter().map(|(i, c)| (idx[*i as usize] as u32, c.clone())).collect()
    }

    pub fn lift_noncycle(&self, n: usize, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let idx = &self.split.noncycle_index[n];
        v.iter().map(|(i, c)| (idx[*i as usize] as u32, c.clone())).collect()
    }

    /// The part of a relative cochain on cycle blocks, in quotient coordinates.
    pub fn project_cycle(&self, n: usize, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        self.split.projection[n].mul_vec(self.field(), v)
    }

    /// A relative cochain supported on non-cycle blocks, in subcomplex coordinates.
    pub fn restrict_noncycle(&self, n: usize, v: &[(u32, F::Elem)]) -> Result<SparseVec<F::Elem>> {
        v.iter()
            .map(|(i, c)| match self.noncycle_pos[n][*i as usize] {
                Some(k) => Ok((k, c.clone())),
                None => Err(Error::LiftNotInSubcomplex),
            })
            .collect()
    }

    fn check_degree(&self, n: usize, what: &str) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Input(format!("{} in degree {} above the computed range 0..={}", what, n, self.n_max)));
        }
        Ok(())
    }

    /// `H^n(D) -> HH^n` on representatives.
    pub fn inclusion_map(&self, n: usize) -> Result<SparseMatrix<F::Elem>> {
        self.check_degree(n, "inclusion map")?;
        let f = self.field();
        let cols = self.noncycle.representatives[n]
            .basis()
            .iter()
            .map(|r| self.total.class_coords(f, n, &self.lift_noncycle(n, r)))
            .collect();
        Ok(SparseMatrix::from_columns(self.total.dims[n], cols))
    }

    /// `HH^n -> H^n(C)` on representatives.
    pub fn projection_map(&self, n: usize) -> Result<SparseMatrix<F::Elem>> {
        self.check_degree(n, "projection map")?;
        let f = self.field();
        let cols = self.total.representatives[n]
            .basis()
            .iter()
            .map(|r| self.cycle.class_coords(f, n, &self.project_cycle(n, r)))
            .collect();
        Ok(SparseMatrix::from_columns(self.cycle.dims[n], cols))
    }

    /// The connecting map `H^n(C) -> H^{n+1}(D)` by lifting a quotient
    /// cocycle, taking its coboundary and reading it in the subcomplex.
    pub fn connecting_snake(&self, n: usize) -> Result<SparseMatrix<F::Elem>> {
        self.check_degree(n + 1, "connecting map")?;
        let f = self.field();
        let cols: Result<Vec<SparseVec<F::Elem>>> = self.cycle.representatives[n]
            .basis()
            .par_iter()
            .map(|r| {
                let d = self.relative.complex.apply(n, &self.lift_cycle(n, r));
                let v = self.restrict_noncycle(n + 1, &d)?;
                Ok(self.noncycle.class_coords(f, n + 1, &v))
            })
            .collect();
        Ok(SparseMatrix::from_columns(self.noncycle.dims[n + 1], cols?))
    }

    /// `1_M ⌣ f + (-1)^{n+1} f ⌣ 1_M` for a quotient cocycle `f`, as a
    /// cochain of the non-cycle subcomplex.
    pub fn nabla(&self, n: usize, f: &[(u32, F::Elem)]) -> Result<SparseVec<F::Elem>> {
        self.check_degree(n + 1, "connecting map")?;
        let fld = self.field();
        if !self.split.cycle.apply(n, f).is_empty() {
            return Err(Error::NotACocycle);
        }
        let j = &self.relative;
        let unit = unit_on_arrows(j)?;
        let lifted = self.lift_cycle(n, f);
        let left = cup(j, 1, &unit, n, &lifted)?;
        let right = cup(j, n, &lifted, 1, &unit)?;
        let sign = if n % 2 == 1 { fld.one() } else { fld.from_i64(-1) };
        let v = axpy(fld, &left, &sign, &right);
        self.restrict_noncycle(n + 1, &v).map_err(|_| Error::Internal("the connecting formula leaves the subcomplex".into()))
    }

    /// The connecting map on representatives through the cup product formula.
    pub fn connecting_nabla(&self, n: usize) -> Result<SparseMatrix<F::Elem>> {
        let f = self.field();
        let cols: Result<Vec<SparseVec<F::Elem>>> = self.cycle.representatives[n]
            .basis()
            .par_iter()
            .map(|r| Ok(self.noncycle.class_coords(f, n + 1, &self.nabla(n, r)?)))
            .collect();
        Ok(SparseMatrix::from_columns(self.noncycle.dims[n + 1], cols?))
    }
}

/// `H^n(C) -> H^{n+1}(D)` by the zig-zag through the relative complex.
pub fn connecting_snake<F: Field>(seq: &CohomologySequence<F>, n: usize) -> Result<SparseMatrix<F::Elem>> {
    seq.connecting_snake(n)
}

/// The connecting map applied to one quotient cocycle through `1_M`.
pub fn connecting_nabla_formula<F: Field>(
    seq: &CohomologySequence<F>,
    n: usize,
    f: &[(u32, F::Elem)],
) -> Result<SparseVec<F::Elem>> {
    seq.nabla(n, f)
}

/// One degree of the long exact sequence
/// `H^n(D) -> HH^n -> H^n(C) -> H^{n+1}(D)`.
#[derive(Clone, Debug)]
pub struct LesDegree<E> {
    pub degree: usize,
    /// `H^n(D)`, `HH^n`, `H^n(C)`.
    pub dims: [usize; 3],
    pub inclusion: SparseMatrix<E>,
    pub projection: SparseMatrix<E>,
    /// Missing in the top degree.
    pub connecting: Option<SparseMatrix<E>>,
    /// Exactness at each node, `None` where a neighbouring map is missing.
    pub exact: [Option<bool>; 3],
    /// Dimension along each non-cycle path, then along each cycle or vertex.
    pub noncycle_paths: Vec<(String, usize)>,
    pub cycle_paths: Vec<(String, usize)>,
}

#[derive(Clone, Debug)]
pub struct LesReport<E> {
    pub degrees: Vec<LesDegree<E>>,
}

impl<E> LesReport<E> {
    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(|d| d.exact.iter().all(|e| *e != Some(false)))
    }

    /// Nodes in sequence order with their dimensions.
    pub fn nodes(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for d in &self.degrees {
            let n = d.degree;
            out.push((format!("H^{}(D)", n), d.dims[0]));
            out.push((format!("HH^{}", n), d.dims[1]));
            out.push((format!("H^{}(C)", n), d.dims[2]));
        }
        out
    }
}

fn is_zero_product<F: Field>(f: &F, a: &SparseMatrix<F::Elem>, b: &SparseMatrix<F::Elem>) -> bool {
    b.mul(f, a).is_zero()
}

/// Exactness at the middle of `U -in-> V -out-> W`.
fn exact_at<F: Field>(f: &F, dim: usize, incoming: &SparseMatrix<F::Elem>, outgoing: &SparseMatrix<F::Elem>) -> bool {
    is_zero_product(f, incoming, outgoing) && rank(f, incoming) + rank(f, outgoing) == dim
}

fn path_dims<F: Field>(delta: &QSet<F>, n_max: usize) -> Result<(Vec<Vec<(String, usize)>>, Vec<Vec<(String, usize)>>)> {
    let q = delta.quiver();
    let (cycles, noncycles) = enumerate_paths(q, n_max);
    let table = |ws: &[crate::trajectory::QPath]| -> Result<Vec<Vec<(String, usize)>>> {
        let per: Result<Vec<(String, Vec<usize>)>> = ws
            .par_iter()
            .map(|w| {
                let name = if w.is_empty() { q.vertices()[w.source].clone() } else { w.render(q) };
                Ok((name, along_path_complex(delta, w, n_max)?.cohomology_dims()))
            })
            .collect();
        let per = per?;
        Ok((0..=n_max)
            .map(|n| per.iter().filter(|(_, h)| h[n] > 0).map(|(name, h)| (name.clone(), h[n])).collect())
            .collect())
    };
    Ok((table(&noncycles)?, table(&cycles)?))
}

/// The long exact sequence in degrees `0..=n_max` with its maps on
/// representatives, checked for exactness wherever both neighbouring maps
/// are available.
pub fn long_exact_sequence<F: Field>(delta: &QSet<F>, n_max: usize) -> Result<LesReport<F::Elem>> {
    let seq = CohomologySequence::new(delta, n_max)?;
    les_report(&seq, true)
}

/// Assembles the report of an already computed sequence, with or without
/// the breakdown along paths.
pub fn les_report<F: Field>(seq: &CohomologySequence<F>, along_paths: bool) -> Result<LesReport<F::Elem>> {
    let f = seq.field();
    let n_max = seq.n_max();
    let delta = &seq.relative.delta;
    let (nc_paths, c_paths) = if along_paths { path_dims(delta, n_max)? } else { (vec![vec![]; n_max + 1], vec![vec![]; n_max + 1]) };
    let mut degrees = Vec::new();
    for n in 0..=n_max {
        let inclusion = seq.inclusion_map(n)?;
        let projection = seq.projection_map(n)?;
        let connecting = if n < n_max {
            let snake = seq.connecting_snake(n)?;
            if snake != seq.connecting_nabla(n)? {
                return Err(Error::Internal(format!("the two connecting maps differ in degree {}", n)));
            }
            Some(snake)
        } else {
            None
        };
        degrees.push(LesDegree {
            degree: n,
            dims: [seq.noncycle.dims[n], seq.total.dims[n], seq.cycle.dims[n]],
            inclusion,
            projection,
            connecting,
            exact: [None; 3],
            noncycle_paths: nc_paths[n].clone(),
            cycle_paths: c_paths[n].clone(),
        });
    }
    for n in 0..=n_max {
        let before: SparseMatrix<F::Elem> = match n {
            0 => SparseMatrix::zeros(degrees[0].dims[0], 0),
            _ => degrees[n - 1].connecting.clone().expect("connecting map below the top"),
        };
        let d = &degrees[n];
        let at_noncycle = exact_at(f, d.dims[0], &before, &d.inclusion);
        let at_total = exact_at(f, d.dims[1], &d.inclusion, &d.projection);
        let at_cycle = d.connecting.as_ref().map(|c| exact_at(f, d.dims[2], &d.projection, c));
        degrees[n].exact = [Some(at_noncycle), Some(at_total), at_cycle];
    }
    let report = LesReport { degrees };
    if let Some(bad) = report.degrees.iter().find(|d| d.exact.contains(&Some(false))) {
        return Err(Error::ExactnessFailure(format!("degree {}: {:?}", bad.degree, bad.exact)));
    }
    Ok(report)
}

/// Outcome of the cup product checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupVerdict {
    /// Pairs of subcomplex classes whose product was tested.
    pub noncycle_pairs: usize,
    /// Products of subcomplex classes that are not coboundaries.
    pub noncycle_failures: usize,
    /// Pairs of classes tested for multiplicativity of the projection.
    pub projection_pairs: usize,
    pub projection_failures: usize,
}

impl CupVerdict {
    pub fn holds(&self) -> bool {
        self.noncycle_failures == 0 && self.projection_failures == 0
    }
}

/// Products of classes from the subcomplex vanish in `HH`, and the
/// projection to the quotient is multiplicative, for all representative
/// pairs of total degree at most `n_max`.
pub fn cup_annihilation_check<F: Field>(delta: &QSet<F>, n_max: usize) -> Result<CupVerdict> {
    let seq = CohomologySequence::new(delta, n_max)?;
    cup_checks(&seq)
}

pub fn cup_checks<F: Field>(seq: &CohomologySequence<F>) -> Result<CupVerdict> {
    let f = seq.field();
    let j = &seq.relative;
    let n_max = seq.n_max();
    let mut pairs = Vec::new();
    for p in 0..=n_max {
        for q in 0..=n_max - p {
            pairs.push((p, q));
        }
    }
    let mut verdict = CupVerdict { noncycle_pairs: 0, noncycle_failures: 0, projection_pairs: 0, projection_failures: 0 };
    for (p, q) in pairs {
        let nc: Vec<SparseVec<F::Elem>> =
            seq.noncycle.representatives[p].basis().iter().map(|r| seq.lift_noncycle(p, r)).collect();
        let nc2: Vec<SparseVec<F::Elem>> =
            seq.noncycle.representatives[q].basis().iter().map(|r| seq.lift_noncycle(q, r)).collect();
        for u in &nc {
            for v in &nc2 {
                let w = cup(j, p, u, q, v)?;
                verdict.noncycle_pairs += 1;
                if !seq.total.is_coboundary(f, p + q, &w) {
                    verdict.noncycle_failures += 1;
                }
            }
        }
        let reps = |n: usize| seq.total.representatives[n].basis();
        for u in reps(p) {
            for v in reps(q) {
                let w = seq.project_cycle(p + q, &cup(j, p, u, q, v)?);
                let pu = seq.lift_cycle(p, &seq.project_cycle(p, u));
                let pv = seq.lift_cycle(q, &seq.project_cycle(q, v));
                let w2 = seq.project_cycle(p + q, &cup(j, p, &pu, q, &pv)?);
                let diff = normalize(f, axpy(f, &w, &f.from_i64(-1), &w2));
                verdict.projection_pairs += 1;
                if !seq.cycle.is_coboundary(f, p + q, &diff) {
                    verdict.projection_failures += 1;
                }
            }
        }
    }
    Ok(verdict)
}
