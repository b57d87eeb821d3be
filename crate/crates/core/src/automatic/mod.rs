//! k-regular sequences over finite fields: linear representations read
//! most-significant digit first, deterministic finite automata with output,
//! and the constructions linking them to Mahler equations.

mod becker_auto;
mod closure;
mod dfao;
mod linrep;
mod periodicity;
mod unit_product;

pub use becker_auto::{
    becker_automatize_from, becker_automatize_mod_p, becker_representation, degree_bound, BeckerAutomaton,
    VALIDATION_TERMS,
};
pub use closure::kernel_closure;
pub use dfao::{digits_msd, Dfao};
pub use linrep::{representation_product, LinearRepresentation, Matrix};
pub use periodicity::{eventual_periodicity, PeriodicityVerdict};
pub use unit_product::{
    unit_product_automatize, unit_product_mod_p, unit_product_representation, unit_product_root_of_unity,
    UnitProduct,
};
