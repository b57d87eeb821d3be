//! Reduction modulo primes, the search for primes where the roots of the
//! non-cyclotomic parts behave well, and the end-to-end rationality
//! pipeline built on both.

mod pipeline;
mod primes;
mod reduce;

pub use pipeline::{
    pipeline_rationality, PipelineParams, PipelineReport, PrimeCertificate, StageRecord, StageStatus, Verdict,
};
pub use primes::{linear_roots, prime_search, PrimeReport, RootWitness};
pub use reduce::{reduce_equation, reduce_poly, reduce_rational, reduce_series};
