//! Rationality of truncated series via Hankel kernels, and the split of a
//! polynomial into its root-of-unity part and the rest.

mod cyclotomic;
mod hankel;

pub use cyclotomic::{
    cyclotomic_polynomial, cyclotomic_split, euler_phi, fixed_root_check, reciprocal_cyclotomic, CyclotomicSplit,
    FixedRootCheck,
};
pub use hankel::{hankel_rationality, hankel_required_precision, HankelReconstruction};
