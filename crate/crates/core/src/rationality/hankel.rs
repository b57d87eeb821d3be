use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelReconstruction {
    pub fraction: RationalFunction<Rationals>,
    /// Rank of the (d+1)-row window; the decision threshold is rank ≤ d.
    pub rank: usize,
    pub window_columns: usize,
    /// The fraction re-expands to the input on every available coefficient.
    pub certified_to: usize,
}

pub fn hankel_required_precision(d: usize) -> usize {
    4 * d + 16
}

/// Looks for A/B with deg A, deg B ≤ d and B(0) ≠ 0 matching F. The window
/// has rows f(d+1+i+j), i = 0..=d, over every column j the precision allows.
/// Returns `None` when the window has full rank or the candidate fails to
/// reproduce F.
pub fn hankel_rationality(f: &Series<Rationals>, d: usize) -> Result<Option<HankelReconstruction>> {
    let n = f.precision();
    let needed = hankel_required_precision(d);
    if n < needed {
        return Err(Error::InsufficientPrecision { needed, given: n });
    }
    let columns = n - (2 * d + 1);
    // Transposed window: c is a kernel vector iff Σ_i c_i f(d+1+i+j) = 0 ∀j.
    let rows: Vec<Vec<_>> = (0..columns)
        .map(|j| (0..=d).map(|i| f.coeff(d + 1 + i + j).clone()).collect())
        .collect();
    let kernel = Rationals.kernel(&rows, d + 1);
    let Some(c) = kernel.vector else {
        return Ok(None);
    };
    // B = c_d + c_{d−1}x + … + c_0 x^d; then B·F vanishes beyond degree 2d.
    let b = Poly::new(Rationals, c.into_iter().rev().collect());
    let bf = f.mul_poly(&b);
    let a = Poly::new(Rationals, bf.coeffs()[..=2 * d].to_vec());
    let fraction = RationalFunction::new(a, b)?;
    let (num, den) = (fraction.numerator(), fraction.denominator());
    if num.degree_or_zero() > d || den.degree_or_zero() > d || den.coeff(0) != Rationals.one() {
        return Ok(None);
    }
    if fraction.expand(n)? != *f {
        return Ok(None);
    }
    Ok(Some(HankelReconstruction { fraction, rank: kernel.rank, window_columns: columns, certified_to: n }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, c)
    }

    #[test]
    fn geometric_three() {
        let f = Series::from_fraction(&q(&[1]), &q(&[1, -3]), 40).unwrap();
        let r = hankel_rationality(&f, 3).unwrap().unwrap();
        assert_eq!(r.fraction.numerator(), &q(&[1]));
        assert_eq!(r.fraction.denominator(), &q(&[1, -3]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.certified_to, 40);
    }

    #[test]
    fn polynomial_input() {
        let p = q(&[2, 0, -1, 5]);
        let f = Series::from_poly(&p, 60);
        for d in 3..8 {
            let r = hankel_rationality(&f, d).unwrap().unwrap();
            assert_eq!(r.fraction.numerator(), &p);
            assert_eq!(r.fraction.denominator(), &q(&[1]));
        }
    }

    #[test]
    fn lacunary_series_is_not_rational() {
        let mut c = alloc::vec![0i64; 600];
        let mut e = 1;
        while e < 600 {
            c[e] = 1;
            e *= 2;
        }
        let f = Series::from_i64s(Rationals, &c);
        for d in 0..=8 {
            assert!(hankel_rationality(&f, d).unwrap().is_none(), "d={d}");
        }
    }

    #[test]
    fn degree_too_small() {
        // 1/((1−x)(1−2x)) needs d = 2.
        let f = Series::from_fraction(&q(&[1]), &q(&[1, -3, 2]), 80).unwrap();
        assert!(hankel_rationality(&f, 1).unwrap().is_none());
        let r = hankel_rationality(&f, 2).unwrap().unwrap();
        assert_eq!(r.fraction.denominator(), &q(&[1, -3, 2]));
        let r5 = hankel_rationality(&f, 5).unwrap().unwrap();
        assert_eq!(r5.fraction, r.fraction);
    }

    #[test]
    fn rational_coefficients() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let b = Poly::new(Rationals, alloc::vec![Rationals.one(), half]);
        let f = Series::from_fraction(&q(&[3, 1]), &b, 50).unwrap();
        let r = hankel_rationality(&f, 2).unwrap().unwrap();
        assert_eq!(r.fraction.expand(50).unwrap(), f);
    }

    #[test]
    fn short_input_rejected() {
        let f = Series::from_i64s(Rationals, &[1; 10]);
        assert_eq!(
            hankel_rationality(&f, 2),
            Err(Error::InsufficientPrecision { needed: 24, given: 10 })
        );
    }
}
