//! Small algebras that come up again and again.

use super::algebra::{ground_field, FinDimAlgebra};
use super::presentation::{monomial_algebra, parse_word, RewritePresentation, Rule};
use super::quiver::Quiver;
use crate::error::Result;
use crate::exactla::Field;

pub fn field_algebra<F: Field>(f: &F) -> FinDimAlgebra<F> {
    ground_field(f)
}

/// `k[t]/t^n`
pub fn truncated_polynomial<F: Field>(f: &F, n: usize) -> Result<FinDimAlgebra<F>> {
    if n <= 1 {
        return Ok(ground_field(f));
    }
    let q = Quiver::from_labels(&["o"], &[("t", "o", "o")])?;
    let zero = vec!["t"; n].join(" ");
    monomial_algebra(f, q, &[zero.as_str()], n + 1)
}

/// Path algebra of the linearly oriented quiver `1 -> 2 -> ... -> n`.
pub fn linear_path_algebra<F: Field>(f: &F, n: usize) -> Result<FinDimAlgebra<F>> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let arrow_names: Vec<String> = (1..n).map(|i| format!("a{}", i)).collect();
    let arrows: Vec<(&str, &str, &str)> =
        (1..n).map(|i| (arrow_names[i - 1].as_str(), vs[i - 1], vs[i])).collect();
    let q = Quiver::from_labels(&vs, &arrows)?;
    monomial_algebra(f, q, &[], n)
}

/// `k<a, b>/(a^2, b^2, ba - q ab)`, of dimension 4.
pub fn quantum_exterior<F: Field>(f: &F, q: F::Elem) -> Result<FinDimAlgebra<F>> {
    let quiver = Quiver::from_labels(&["s"], &[("a", "s", "s"), ("b", "s", "s")])?;
    let w = |s: &str| parse_word(&quiver, s);
    let mut rules = vec![
        Rule { lead: w("aa")?, replacement: vec![] },
        Rule { lead: w("bb")?, replacement: vec![] },
    ];
    let replacement = if f.is_zero(&q) { vec![] } else { vec![(q, w("ab")?)] };
    rules.push(Rule { lead: w("ba")?, replacement });
    RewritePresentation::new(f, quiver, rules, 4)?.to_algebra()
}

/// `k^n` with its primitive idempotents as system.
pub fn semisimple<F: Field>(f: &F, n: usize) -> Result<FinDimAlgebra<F>> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    monomial_algebra(f, Quiver::from_labels(&vs, &[])?, &[], 1)
}

/// The full matrix algebra `M_n(k)` with the diagonal idempotents as system.
pub fn matrix_algebra<F: Field>(f: &F, n: usize) -> Result<FinDimAlgebra<F>> {
    let dim = n * n;
    let mut table = vec![Vec::new(); dim * dim];
    // E_ij has index i * n + j; E_ij E_kl = delta_jk E_il
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table[(i * n + j) * dim + j * n + l] = vec![((i * n + l) as u32, f.one())];
            }
        }
    }
    let unit: Vec<(u32, F::Elem)> = (0..n).map(|i| ((i * n + i) as u32, f.one())).collect();
    let system = (0..n).map(|i| vec![((i * n + i) as u32, f.one())]).collect();
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
    let slabels = (1..=n).map(|i| i.to_string()).collect();
    FinDimAlgebra::from_structure_constants(f, labels, table, unit, system, slabels)
}
