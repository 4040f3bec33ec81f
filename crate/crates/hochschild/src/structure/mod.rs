//! Cup products, the long exact sequence and its connecting map, null-square
//! algebras and two-floor Peirce quivers.

pub mod cup;
pub mod les;
pub mod peirce;
pub mod square;

pub use cup::{compose_along_arrow, cup, leibniz_defect, unit_on_arrows};
pub use les::{
    connecting_nabla_formula, connecting_snake, cup_annihilation_check, cup_checks, les_report, long_exact_sequence,
    CohomologySequence, CupVerdict, LesDegree, LesReport,
};
pub use peirce::{
    efficient_cycles, nilpotence_bound, peirce_square_of, radical_square_zero, realize, square_bimodule, square_from_peirce,
    tensor_nilpotence, tensor_power_dims, PeirceArrow, PeirceSquareQuiver,
};
pub use square::{
    certify_projective, five_term, free_rank_one_dims, null_square_hh, restricted_nabla, FiveTerm, NullSquareHH,
    RestrictedNabla,
};
