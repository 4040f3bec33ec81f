//! The long exact sequence of the one-point extension k[k], with the
//! contribution of each path to the outer nodes.

use hochschild::exactla::Rationals;
use hochschild::instances::one_point_extension;
use hochschild::structure::long_exact_sequence;

fn main() -> hochschild::Result<()> {
    let delta = one_point_extension(&Rationals)?;
    let report = long_exact_sequence(&delta, 3)?;
    for (node, dim) in report.nodes() {
        println!("{:8} {}", node, dim);
    }
    for d in &report.degrees {
        println!("degree {}: subcomplex {:?} quotient {:?}", d.degree, d.noncycle_paths, d.cycle_paths);
    }
    println!("exact: {}", report.is_exact());
    Ok(())
}
