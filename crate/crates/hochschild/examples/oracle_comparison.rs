//! Hochschild cohomology of the composite and toupie algebras, computed
//! twice: from the absolute cochain complex and along trajectories.

use std::time::Instant;

use hochschild::complex::{bar_hochschild, relative_complex, DEFAULT_BUDGET};
use hochschild::exactla::{Field, Rationals};
use hochschild::instances::{composite_square, toupie_square};
use hochschild::qset::assemble_lambda;

fn main() -> hochschild::Result<()> {
    let f = Rationals;
    let degree = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for (name, sq) in [("composite", composite_square(&f, f.from_i64(2))?), ("toupie", toupie_square(&f)?)] {
        let delta = sq.qset()?;
        let lambda = assemble_lambda(&delta)?;
        let t = Instant::now();
        let rel = relative_complex(&delta, degree)?.complex.cohomology_dims();
        let t_rel = t.elapsed();
        let t = Instant::now();
        let bar = bar_hochschild(&lambda.algebra, degree, DEFAULT_BUDGET)?;
        println!("{name}: dim {} relative {:?} ({:.2?}) bar {:?} ({:.2?})", lambda.algebra.dim(), rel, t_rel, bar, t.elapsed());
    }
    Ok(())
}
