//! Floating-point spot checks of growth estimates, plus two exact checks:
//! companion nilpotency and a finite abelian group search.

pub mod dd;
mod group;
mod growth;
mod nilpotent;
mod sum;

pub use dd::{Cdd, Dd};
pub use group::{group_search, GroupInstance, GroupSearch};
pub use growth::{divergence_probe, product_growth, DivergenceProbe, GrowthValue, RootOfUnity};
pub use nilpotent::{companion_matrix, companion_nilpotent, NilpotencyCheck};
pub use sum::{check_sum_inequality, equispaced, SumReport, SumSample};
