//! Cohomology along each path of the round-trip instance, directly from the
//! trajectory complex and again as Ext of the path bimodule.

use hochschild::complex::along_path_complex;
use hochschild::exactla::Rationals;
use hochschild::homalg::{along_path_via_ext, tor_vanishing};
use hochschild::instances::round_trip;
use hochschild::trajectory::enumerate_paths;

fn main() -> hochschild::Result<()> {
    let f = Rationals;
    let delta = round_trip(&f)?;
    let q = delta.quiver();
    let (cycles, noncycles) = enumerate_paths(q, 3);
    for w in cycles.iter().chain(&noncycles).filter(|w| !w.is_empty()) {
        let m = w.len();
        let direct = along_path_complex(&delta, w, m + 2)?.cohomology_dims();
        let ext = along_path_via_ext(&delta, w, 2);
        let tor = if m >= 2 { format!("{:?}", tor_vanishing(&delta, w, 3)?) } else { "n/a".into() };
        match ext {
            Ok(e) => println!("{:8} H^{}.. = {:?}  Ext = {:?}  tor {}", w.render(q), m, &direct[m..], e, tor),
            Err(e) => println!("{:8} H^{}.. = {:?}  Ext unavailable: {}", w.render(q), m, &direct[m..], e),
        }
    }
    Ok(())
}
