#![no_std]
//! Exact algorithms for k-Mahler functional equations: power-series and
//! polynomial arithmetic over ℚ and 𝔽_p, equation transformations,
//! k-regular representations and automata, rationality tests, reduction
//! modulo primes, and numeric checks of growth estimates.

extern crate alloc;

pub mod automatic;
pub mod corpus;
pub mod error;
pub mod field;
pub mod linalg;
pub mod modp;
pub mod mahler;
pub mod poly;
pub mod ratfun;
pub mod rationality;
pub mod series;
pub mod verifiers;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use series::Series;
