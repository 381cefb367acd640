//! Steenrod squares on H(TV) and on HH(TV) from a π-shc structural map.

mod kappa;
mod lift;
mod pipeline;
mod section;
mod table;

pub use kappa::{sq_on_ha, CellValues, StructuralMap};
pub use lift::{chain_degree, lift_cycle, map_matrix};
pub use pipeline::{
    HatChain, HatComplex, HatQuotient, HhPipeline, SquareChain, SquareComplex, SquareQuotient,
};
pub use section::Section;
pub use table::{
    ha_table, nu, odd_prime_cells, steenrod_table, CartanMismatch, HaClasses, HhClasses,
    Provenance, SteenrodTable, TableRow,
};
