//! The worked instances used by tests, examples and the problem corpus.

use crate::algebra::catalog::{field_algebra, linear_path_algebra, quantum_exterior};
use crate::algebra::{
    monomial_algebra, parse_word, free_corner_bimodule, Bimodule, FinDimAlgebra, Quiver, RewritePresentation, Rule,
};
use crate::error::Result;
use crate::exactla::Field;
use crate::qset::{free_rank_one, share, QSet, SquareData};

/// One vertex carrying the given algebra.
pub fn single_vertex<F: Field>(a: FinDimAlgebra<F>) -> Result<QSet<F>> {
    QSet::new(Quiver::from_labels(&["x"], &[])?, vec![share(a)], vec![])
}

/// `x -a-> y` with `k` everywhere: the path algebra of `A_2`.
pub fn one_point_extension<F: Field>(f: &F) -> Result<QSet<F>> {
    let k = share(field_algebra(f));
    QSet::new(
        Quiver::from_labels(&["x", "y"], &[("a", "x", "y")])?,
        vec![k.clone(), k.clone()],
        vec![Bimodule::regular(k)],
    )
}

/// `x -a-> y -b-> x` with `k` everywhere.
pub fn round_trip<F: Field>(f: &F) -> Result<QSet<F>> {
    let k = share(field_algebra(f));
    let reg = Bimodule::regular(k.clone());
    QSet::new(
        Quiver::from_labels(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")])?,
        vec![k.clone(), k],
        vec![reg.clone(), reg],
    )
}

/// Null square with `A = kA_2`, `B = k` and free corners of rank one.
pub fn free_square_a2_k<F: Field>(f: &F) -> Result<SquareData<F>> {
    let a = share(linear_path_algebra(f, 2)?);
    let b = share(field_algebra(f));
    let m = free_rank_one(&b, &a)?;
    let n = free_rank_one(&a, &b)?;
    SquareData::null(a, b, m, n)
}

/// Quiver of the composite algebra: the quantum exterior algebra at `s`, an
/// arrow `h: x -> y`, and arrows `u: x -> s`, `v: s -> y`.
pub fn composite_quiver() -> Result<Quiver> {
    Quiver::from_labels(
        &["s", "x", "y"],
        &[("a", "s", "s"), ("b", "s", "s"), ("h", "x", "y"), ("u", "x", "s"), ("v", "s", "y")],
    )
}

/// The composite algebra from a presentation: `a^2 = b^2 = 0`, `ba = q ab`,
/// and every path from `x` to `y` through `s` vanishes.
pub fn composite_algebra<F: Field>(f: &F, q: F::Elem) -> Result<FinDimAlgebra<F>> {
    let quiver = composite_quiver()?;
    let w = |s: &str| parse_word(&quiver, s);
    let mut rules = Vec::new();
    for z in ["a a", "b b", "v u", "v a u", "v b u", "v a b u"] {
        rules.push(Rule { lead: w(z)?, replacement: vec![] });
    }
    let replacement = if f.is_zero(&q) { vec![] } else { vec![(q, w("a b")?)] };
    rules.push(Rule { lead: w("b a")?, replacement });
    RewritePresentation::new(f, quiver, rules, 6)?.to_algebra()
}

/// The composite algebra as a null square: `A` the quantum exterior algebra,
/// `B = kA_2` on `x -> y`, `M = B e_y (x) A`, `N = A (x) e_x B`.
pub fn composite_square<F: Field>(f: &F, q: F::Elem) -> Result<SquareData<F>> {
    let a = share(quantum_exterior(f, q)?);
    let bq = Quiver::from_labels(&["x", "y"], &[("h", "x", "y")])?;
    let b = share(monomial_algebra(f, bq, &[], 2)?);
    let m = free_corner_bimodule(&b, "y", "s", &a)?;
    let n = free_corner_bimodule(&a, "s", "x", &b)?;
    SquareData::null(a, b, m, n)
}

/// Quiver of the toupie: `0 -> 1 -> 2 -> 3 -> w` and `0 -> 4 -> w`.
pub fn toupie_quiver() -> Result<Quiver> {
    Quiver::from_labels(
        &["0", "1", "2", "3", "4", "w"],
        &[
            ("c0", "0", "1"),
            ("c1", "1", "2"),
            ("c2", "2", "3"),
            ("c3", "3", "w"),
            ("d0", "0", "4"),
            ("d1", "4", "w"),
        ],
    )
}

/// The toupie algebra with `c2 c1 = 0`.
pub fn toupie_algebra<F: Field>(f: &F) -> Result<FinDimAlgebra<F>> {
    monomial_algebra(f, toupie_quiver()?, &["c2 c1"], 5)
}

/// The toupie as a null square: `A` the short branch `0 -> 4 -> w`, `B` the
/// long branch `1 -> 2 -> 3` with `c2 c1 = 0`, glued along `c0` and `c3`.
pub fn toupie_square<F: Field>(f: &F) -> Result<SquareData<F>> {
    let aq = Quiver::from_labels(&["0", "4", "w"], &[("d0", "0", "4"), ("d1", "4", "w")])?;
    let a = share(monomial_algebra(f, aq, &[], 3)?);
    let bq = Quiver::from_labels(&["1", "2", "3"], &[("c1", "1", "2"), ("c2", "2", "3")])?;
    let b = share(monomial_algebra(f, bq, &["c2 c1"], 3)?);
    let m = free_corner_bimodule(&b, "1", "0", &a)?;
    let n = free_corner_bimodule(&a, "w", "3", &b)?;
    SquareData::null(a, b, m, n)
}
