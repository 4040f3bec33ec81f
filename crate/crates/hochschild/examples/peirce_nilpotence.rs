//! Two-floor Peirce quivers: an efficient cycle keeps every tensor power of
//! the corner bimodule alive, its absence makes it nilpotent.

use hochschild::algebra::{Arrow, Quiver};
use hochschild::exactla::Rationals;
use hochschild::structure::*;

fn floor(prefix: &str) -> hochschild::Result<Quiver> {
    let v = vec![format!("{prefix}1"), format!("{prefix}2")];
    Quiver::new(v, vec![Arrow { label: format!("{prefix}12"), source: 0, target: 1 }])
}

fn main() -> hochschild::Result<()> {
    let f = Rationals;
    // e2 -> f1 -> f2 -> e1 -> e2 is efficient; from e1 down to f2 there is no way up
    for (down, up) in [((1, 0, 1), (1, 0, 1)), ((0, 1, 1), (0, 0, 1))] {
        let pq = PeirceSquareQuiver::new(floor("e")?, floor("f")?, vec![down], vec![up])?;
        let (_, m) = square_bimodule(&realize(&f, &pq)?)?;
        let bound = nilpotence_bound(&pq);
        let cycle = efficient_cycles(&pq).map(|c| c.iter().map(|a| pq.render(*a)).collect::<Vec<_>>().join(" "));
        println!(
            "down {:?} up {:?}: efficient cycle {:?}, tensor powers {:?}, nilpotent at {:?}",
            down,
            up,
            cycle,
            tensor_power_dims(&m, bound)?,
            tensor_nilpotence(&m, bound)?
        );
    }
    Ok(())
}
