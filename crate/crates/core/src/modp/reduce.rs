use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::mahler::MahlerEquation;
use crate::poly::Poly;
use crate::series::Series;

pub fn reduce_rational(f: PrimeField, r: &BigRational) -> Result<u64> {
    f.from_rational(r).ok_or(Error::BadPrime { p: f.modulus() })
}

pub fn reduce_poly(f: PrimeField, p: &Poly<Rationals>) -> Result<Poly<PrimeField>> {
    let c = p.coeffs().iter().map(|r| reduce_rational(f, r)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(f, c))
}

pub fn reduce_series(f: PrimeField, s: &Series<Rationals>) -> Result<Series<PrimeField>> {
    let c = s.coeffs().iter().map(|r| reduce_rational(f, r)).collect::<Result<Vec<_>>>()?;
    Ok(Series::new(f, c))
}

/// Coefficient-wise reduction; P₀ must survive.
pub fn reduce_equation(f: PrimeField, eq: &MahlerEquation<Rationals>) -> Result<MahlerEquation<PrimeField>> {
    let r = eq.map_coeffs(f, |c| reduce_rational(f, c))?;
    if r.coeff(0).is_zero() {
        return Err(Error::BadPrime { p: f.modulus() });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn geometric_mod_five() {
        let q = |c: &[i64]| Poly::from_i64s(Rationals, c);
        let s = Series::from_fraction(&q(&[1]), &q(&[1, -3]), 8).unwrap();
        let r = reduce_series(fp(5), &s).unwrap();
        assert_eq!(r.coeffs(), &[1, 3, 4, 2, 1, 3, 4, 2]);
    }

    #[test]
    fn integer_polynomial() {
        let p = Poly::from_i64s(Rationals, &[7, -3, 12]);
        assert_eq!(reduce_poly(fp(5), &p).unwrap(), Poly::from_i64s(fp(5), &[2, 2, 2]));
    }

    #[test]
    fn bad_denominator() {
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(reduce_rational(fp(5), &fifth), Err(Error::BadPrime { p: 5 }));
        assert_eq!(reduce_rational(fp(7), &fifth), Ok(3));
    }

    #[test]
    fn equation_p0_must_survive() {
        let q = |c: &[i64]| Poly::from_i64s(Rationals, c);
        let eq = MahlerEquation::homogeneous(2, alloc::vec![q(&[5]), q(&[1, 1])]).unwrap();
        assert_eq!(reduce_equation(fp(5), &eq), Err(Error::BadPrime { p: 5 }));
        assert!(reduce_equation(fp(3), &eq).is_ok());
    }
}
