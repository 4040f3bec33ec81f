//! kA2 and k glued by free corners: five-term sequences, the restricted
//! connecting map, the closed form and the bar complex side by side.

use hochschild::complex::{bar_hochschild, DEFAULT_BUDGET};
use hochschild::exactla::Rationals;
use hochschild::instances::free_square_a2_k;
use hochschild::qset::assemble_lambda;
use hochschild::structure::{five_term, free_rank_one_dims, null_square_hh};

fn main() -> hochschild::Result<()> {
    let f = Rationals;
    let sq = free_square_a2_k(&f)?;
    for m in 0..=2 {
        let t = five_term(&sq, m, 2)?;
        let row: Vec<String> = t.labels.iter().zip(t.dims).map(|(l, d)| format!("{l}={d}")).collect();
        println!("level {m}: {}", row.join(" -> "));
    }
    let hh = null_square_hh(&sq, 2, DEFAULT_BUDGET)?;
    for l in &hh.levels {
        println!("restricted connecting map at level {}: {} -> {}, rank {}", l.level, l.domain, l.codomain, l.rank);
    }
    let closed = free_rank_one_dims(sq.a.dim(), sq.b.dim(), &hh.diagonal_a, &hh.diagonal_b, 5);
    let bar = bar_hochschild(&assemble_lambda(&sq.qset()?)?.algebra, 3, DEFAULT_BUDGET)?;
    println!("sequences {:?}\nclosed form {:?}\nbar {:?}", hh.dims, closed, bar);
    Ok(())
}
