//! Reduced rational functions.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::Series;

/// numerator / denominator with gcd 1. The denominator is scaled so its
/// constant term is 1 when that term is nonzero, and monic otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction<F: Field> {
    numerator: Poly<F>,
    denominator: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(numerator: Poly<F>, denominator: Poly<F>) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let g = numerator.gcd(&denominator);
        let (mut a, mut b) = if g.degree() == Some(0) || numerator.is_zero() {
            if numerator.is_zero() {
                (numerator.clone(), Poly::one(denominator.field().clone()))
            } else {
                (numerator, denominator)
            }
        } else {
            (
                numerator.exact_div(&g).expect("gcd divides"),
                denominator.exact_div(&g).expect("gcd divides"),
            )
        };
        let f = b.field().clone();
        let c0 = b.coeff(0);
        let s = if f.is_zero(&c0) {
            f.inv(b.leading().expect("nonzero")).expect("nonzero")
        } else {
            f.inv(&c0).expect("nonzero")
        };
        a = a.scale(&s);
        b = b.scale(&s);
        Ok(RationalFunction { numerator: a, denominator: b })
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.denominator
    }

    pub fn expand(&self, precision: usize) -> Result<Series<F>> {
        Series::from_fraction(&self.numerator, &self.denominator, precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn reduces_and_normalizes() {
        let a = Poly::from_i64s(Rationals, &[2, -2]);
        let b = Poly::from_i64s(Rationals, &[2, -8, 6]);
        let r = RationalFunction::new(a, b).unwrap();
        assert_eq!(r.numerator(), &Poly::from_i64s(Rationals, &[1]));
        assert_eq!(r.denominator(), &Poly::from_i64s(Rationals, &[1, -3]));
        let s = r.expand(5).unwrap();
        assert_eq!(s, Series::from_i64s(Rationals, &[1, 3, 9, 27, 81]));
    }

    #[test]
    fn zero_numerator() {
        let r = RationalFunction::new(Poly::zero(Rationals), Poly::from_i64s(Rationals, &[0, 3])).unwrap();
        assert_eq!(r.denominator(), &Poly::one(Rationals));
    }
}
