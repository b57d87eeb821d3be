//! Truncated power series with explicit precision.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// The prefix f(0)..f(N−1) of a formal power series; N is the precision.
/// Nothing beyond index N−1 is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Series<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        Series { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Series::new(field, c)
    }

    pub fn zero(field: F, precision: usize) -> Self {
        let z = field.zero();
        Series { field, coeffs: vec![z; precision] }
    }

    pub fn from_poly(p: &Poly<F>, precision: usize) -> Self {
        let c = (0..precision).map(|i| p.coeff(i)).collect();
        Series::new(p.field().clone(), c)
    }

    /// Expansion of a/b; b(0) must be nonzero.
    pub fn from_fraction(a: &Poly<F>, b: &Poly<F>, precision: usize) -> Result<Self> {
        let inv = Series::from_poly(b, precision).invert()?;
        Ok(inv.mul_poly(a))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &F::Elem {
        &self.coeffs[i]
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.precision());
        Series::new(self.field.clone(), self.coeffs[..n].to_vec())
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn is_zero(&self) -> bool {
        self.ord().is_none()
    }

    /// The known prefix as a polynomial.
    pub fn to_poly(&self) -> Poly<F> {
        Poly::new(self.field.clone(), self.coeffs.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.precision().min(o.precision());
        let c = (0..n).map(|i| f.add(&self.coeffs[i], &o.coeffs[i])).collect();
        Series::new(f.clone(), c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.precision().min(o.precision());
        let c = (0..n).map(|i| f.sub(&self.coeffs[i], &o.coeffs[i])).collect();
        Series::new(f.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Series::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Series::new(f.clone(), self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        convolve(&self.field, &self.coeffs[..n], &o.coeffs[..n], n)
    }

    /// Product with an exact polynomial; precision is unchanged.
    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        convolve(&self.field, p.coeffs(), &self.coeffs, self.precision())
    }

    /// Multiplicative inverse to the same precision.
    pub fn invert(&self) -> Result<Self> {
        let g = self.field.invert_series(&self.coeffs).ok_or(Error::ZeroConstantTerm)?;
        Ok(Series::new(self.field.clone(), g))
    }

    /// F(x^e), precision e·N.
    pub fn substitute_power(&self, e: usize) -> Self {
        assert!(e >= 1, "exponent must be positive");
        let f = &self.field;
        let mut c = vec![f.zero(); self.precision() * e];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * e] = a.clone();
        }
        Series::new(f.clone(), c)
    }

    /// Λ_b(F) = Σ f(ki+b) xⁱ, precision ⌈(N−b)/k⌉.
    pub fn cartier_section(&self, k: usize, b: usize) -> Self {
        assert!(k >= 2 && b < k, "need k >= 2 and 0 <= b < k");
        let c = self.coeffs.iter().skip(b).step_by(k).cloned().collect();
        Series::new(self.field.clone(), c)
    }

    /// x^a·F, precision N + a.
    pub fn shift_up(&self, a: usize) -> Self {
        let mut c = vec![self.field.zero(); a];
        c.extend(self.coeffs.iter().cloned());
        Series::new(self.field.clone(), c)
    }

    /// F / x^a when the first a coefficients vanish, precision N − a.
    pub fn shift_down(&self, a: usize) -> Option<Self> {
        if a > self.precision() || self.coeffs[..a].iter().any(|c| !self.field.is_zero(c)) {
            return None;
        }
        Some(Series::new(self.field.clone(), self.coeffs[a..].to_vec()))
    }

    /// First index where the two series differ on their common precision.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        let n = self.precision().min(o.precision());
        (0..n).find(|&i| self.coeffs[i] != o.coeffs[i])
    }
}

fn convolve<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], n: usize) -> Series<F> {
    Series::new(f.clone(), f.convolve(a, b, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn pow2_indicator(n: usize) -> Series<Rationals> {
        let c: Vec<i64> = (0..n).map(|i| (i.is_power_of_two()) as i64).collect();
        Series::from_i64s(Rationals, &c)
    }

    #[test]
    fn substitute_power_examples() {
        let f = Series::from_i64s(Rationals, &[1, 1]);
        let g = f.substitute_power(3);
        assert_eq!(g, Series::from_i64s(Rationals, &[1, 0, 0, 1, 0, 0]));
        let h = pow2_indicator(8).substitute_power(2);
        assert_eq!(h.precision(), 16);
        let expect: Vec<i64> = (0..16usize).map(|i| (i >= 2 && (i / 2).is_power_of_two() && i % 2 == 0) as i64).collect();
        assert_eq!(h, Series::from_i64s(Rationals, &expect));
        assert_eq!(f.substitute_power(1), f);
    }

    #[test]
    fn inversion_examples() {
        let inv = Series::from_i64s(Rationals, &[1, -1, 0, 0, 0, 0]).invert().unwrap();
        assert_eq!(inv, Series::from_i64s(Rationals, &[1; 6]));
        let inv = Series::from_i64s(Rationals, &[1, -2, 1, 0, 0, 0]).invert().unwrap();
        assert_eq!(inv, Series::from_i64s(Rationals, &[1, 2, 3, 4, 5, 6]));
        let bad = Series::from_i64s(Rationals, &[0, 1, 1]).invert();
        assert_eq!(bad, Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn cartier_examples() {
        let f = pow2_indicator(64);
        let odd = f.cartier_section(2, 1);
        assert_eq!(odd.precision(), 32);
        assert_eq!(odd.ord(), Some(0));
        assert!(odd.coeffs()[1..].iter().all(|c| c == &Rationals.zero()));
        let even = f.cartier_section(2, 0);
        assert_eq!(even, pow2_indicator(32));
        let one = Series::from_i64s(Rationals, &[1, 0, 0, 0, 0]);
        assert_eq!(one.cartier_section(3, 0).ord(), Some(0));
        assert!(one.cartier_section(3, 1).is_zero());
        assert_eq!(one.cartier_section(3, 1).precision(), 2);
    }

    fn arb_series(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-50i64..50, 1..max_len)
    }

    proptest! {
        #[test]
        fn reconstruction_identity(c in arb_series(80), k in 2usize..6) {
            let f = Series::from_i64s(Rationals, &c);
            let n = f.precision();
            let mut acc = Series::zero(Rationals, n);
            for b in 0..k {
                let part = f.cartier_section(k, b).substitute_power(k).shift_up(b);
                // each part is exact below its own precision; pad the rest with zeros
                let mut padded = part.truncate(n).into_coeffs();
                padded.resize(n, Rationals.zero());
                acc = acc.add(&Series::new(Rationals, padded));
            }
            prop_assert_eq!(acc, f);
        }

        #[test]
        fn twisted_multiplicativity(a in arb_series(60), g in arb_series(30), k in 2usize..5, b in 0usize..5) {
            let b = b % k;
            let f = Series::from_i64s(Rationals, &a);
            let g = Series::from_i64s(Rationals, &g);
            let lhs = f.mul(&g.substitute_power(k)).cartier_section(k, b);
            let rhs = f.cartier_section(k, b).mul(&g);
            let n = lhs.precision().min(rhs.precision());
            prop_assert_eq!(lhs.truncate(n), rhs.truncate(n));
        }

        #[test]
        fn inverse_times_series_is_one(mut c in arb_series(60)) {
            if c[0] == 0 { c[0] = 1; }
            let f = Series::from_i64s(Rationals, &c);
            let prod = f.mul(&f.invert().unwrap());
            let mut one = vec![0i64; c.len()];
            one[0] = 1;
            prop_assert_eq!(prod, Series::from_i64s(Rationals, &one));
        }

        #[test]
        fn substitution_composes(c in arb_series(30), e1 in 1usize..4, e2 in 1usize..4) {
            let f = Series::from_i64s(PrimeField::new(7).unwrap(), &c);
            prop_assert_eq!(f.substitute_power(e1 * e2), f.substitute_power(e1).substitute_power(e2));
        }
    }
}
