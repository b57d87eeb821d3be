use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{checked_pow, MahlerEquation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FindBounds {
    pub max_order: usize,
    pub max_degree: usize,
    /// Also allow a polynomial term A(x) of degree ≤ max_degree.
    pub inhomogeneous: bool,
}

impl FindBounds {
    pub fn new(max_order: usize, max_degree: usize) -> Self {
        FindBounds { max_order, max_degree, inhomogeneous: false }
    }

    pub fn required_precision(&self) -> usize {
        let cols = (self.max_order + 1) * (self.max_degree + 1)
            + if self.inhomogeneous { self.max_degree + 1 } else { 0 };
        cols + self.max_degree
    }
}

/// An equation discovered from a truncated series. It is only known to hold
/// up to `certified_to`; truncation never proves an identity of series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundEquation<F: Field> {
    pub equation: MahlerEquation<F>,
    pub certified_to: usize,
}

fn system<F: Field>(series: &Series<F>, k: usize, n: usize, d: usize, inh: bool) -> (Vec<Vec<F::Elem>>, usize) {
    let f = series.field();
    let rows_n = series.precision();
    let ncols = (n + 1) * (d + 1) + if inh { d + 1 } else { 0 };
    let mut rows = Vec::with_capacity(rows_n);
    for t in 0..rows_n {
        let mut row = Vec::with_capacity(ncols);
        for i in 0..=n {
            let s = checked_pow(k, i).unwrap_or(usize::MAX);
            for j in 0..=d {
                let v = if t >= j && (t - j) % s == 0 {
                    series.coeff((t - j) / s).clone()
                } else {
                    f.zero()
                };
                row.push(v);
            }
        }
        if inh {
            for j in 0..=d {
                row.push(if t == j { f.one() } else { f.zero() });
            }
        }
        rows.push(row);
    }
    (rows, ncols)
}

fn kernel_at<F: Field>(series: &Series<F>, k: usize, n: usize, d: usize, inh: bool) -> Option<Vec<F::Elem>> {
    let (rows, ncols) = system(series, k, n, d, inh);
    series.field().kernel(&rows, ncols).vector
}

/// Smallest order, then smallest degree, of a relation
/// [A +] Σ Pᵢ F(x^{kⁱ}) ≡ 0 mod x^N, scaled so that the lowest coefficient
/// of the first nonzero Pᵢ is 1.
pub fn find_equation<F: Field>(
    series: &Series<F>,
    k: usize,
    bounds: FindBounds,
) -> Result<Option<FoundEquation<F>>> {
    if k < 2 {
        return Err(Error::InvalidInput("base must be at least 2".into()));
    }
    let needed = bounds.required_precision();
    if series.precision() < needed {
        return Err(Error::InsufficientPrecision { needed, given: series.precision() });
    }
    let inh = bounds.inhomogeneous;
    for n in 0..=bounds.max_order {
        if kernel_at(series, k, n, bounds.max_degree, inh).is_none() {
            continue;
        }
        let (mut lo, mut hi) = (0, bounds.max_degree);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if kernel_at(series, k, n, mid, inh).is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let v = kernel_at(series, k, n, lo, inh).expect("kernel at minimal degree");
        return Ok(Some(FoundEquation {
            equation: assemble(series.field(), k, n, lo, inh, v)?,
            certified_to: series.precision(),
        }));
    }
    Ok(None)
}

fn assemble<F: Field>(f: &F, k: usize, n: usize, d: usize, inh: bool, v: Vec<F::Elem>) -> Result<MahlerEquation<F>> {
    let mut chunks = v.chunks(d + 1);
    let coeffs: Vec<Poly<F>> = (0..=n)
        .map(|_| Poly::new(f.clone(), chunks.next().expect("chunk").to_vec()))
        .collect();
    let a = if inh {
        Poly::new(f.clone(), chunks.next().expect("chunk").to_vec())
    } else {
        Poly::zero(f.clone())
    };
    let lead = coeffs
        .iter()
        .find_map(|p| p.lowest().cloned())
        .ok_or(Error::DegenerateEquation)?;
    let s = f.inv(&lead).expect("nonzero");
    Ok(MahlerEquation::new(k, coeffs, a)?.scale(&s))
}

/// Searches for an m-Mahler equation with m = k^a·ℓ^b, the bases taken
/// from the two supplied equations.
pub fn derive_m_mahler<F: Field>(
    series: &Series<F>,
    eq_k: &MahlerEquation<F>,
    eq_l: &MahlerEquation<F>,
    a: i64,
    b: i64,
    bounds: FindBounds,
) -> Result<Option<FoundEquation<F>>> {
    let m = mixed_power(eq_k.base() as u64, a, eq_l.base() as u64, b).ok_or(Error::InvalidExponents)?;
    find_equation(series, m, bounds)
}

/// k^a·ℓ^b when it is an integer ≥ 2 that fits a usize.
pub fn mixed_power(k: u64, a: i64, l: u64, b: i64) -> Option<usize> {
    let pw = |base: u64, e: i64| -> BigRational {
        let v = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
        if e >= 0 {
            BigRational::from_integer(v)
        } else {
            BigRational::new(BigInt::one(), v)
        }
    };
    let m = pw(k, a) * pw(l, b);
    if !m.is_integer() || m.is_zero() {
        return None;
    }
    let m = m.to_integer().to_usize()?;
    (m >= 2).then_some(m)
}
