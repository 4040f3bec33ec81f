//! Cochain complexes: the relative complex along trajectories, its
//! non-cycle subcomplex and cycle quotient, the complexes along single paths,
//! and the absolute Hochschild complex as an oracle.

pub mod bar;
pub mod cochain;
pub mod relative;
mod terms;

pub use bar::{bar_complex, bar_cost, bar_hochschild, DEFAULT_BUDGET};
pub use cochain::{complement, BlockLabel, CochainComplex, CohomologyResult};
pub use relative::{
    along_path_complex, partial_complex, relative_complex, relative_complex_naive, relative_cost, split_noncycle, Block, BlockLayout,
    NoncycleSplit, RelativeComplex,
};
pub(crate) use terms::{decode as terms_decode, encode as terms_encode};
