use alloc::vec::Vec;

use super::{checked_pow, MahlerEquation, Verification};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::Series;

/// F = product_inverse · becker_part, with product_inverse = (∏ P₀(x^{kⁱ}))⁻¹
/// and becker_part G satisfying G(x) = Σ_{i≥1} Bᵢ(x)·G(x^{kⁱ}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeckerDecomposition<F: Field> {
    pub product_inverse: Series<F>,
    pub becker_part: Series<F>,
    /// Stored as 1·G − Σ Bᵢ·G(x^{kⁱ}) = 0.
    pub becker_equation: MahlerEquation<F>,
    pub certified_to: usize,
}

impl<F: Field> BeckerDecomposition<F> {
    /// B₁..Bₙ.
    pub fn becker_coeffs(&self) -> Vec<Poly<F>> {
        self.becker_equation.coeffs()[1..].iter().map(|p| p.neg()).collect()
    }
}

/// ∏_{i≥0} P(x^{kⁱ}) to the given precision; needs P(0) = 1, and factors
/// with kⁱ ≥ precision are ≡ 1.
pub fn infinite_product<F: Field>(p: &Poly<F>, k: usize, precision: usize) -> Result<Series<F>> {
    let f = p.field();
    if !f.is_one(&p.coeff(0)) {
        return Err(Error::ConstantTermNotOne);
    }
    let mut acc = Series::from_poly(&Poly::one(f.clone()), precision);
    let mut s = 1usize;
    while s < precision.max(1) {
        acc = acc.mul_poly(&p.substitute_power(s));
        match s.checked_mul(k) {
            Some(n) => s = n,
            None => break,
        }
    }
    Ok(acc)
}

pub fn becker_decompose<F: Field>(eq: &MahlerEquation<F>, series: &Series<F>) -> Result<BeckerDecomposition<F>> {
    if !eq.is_homogeneous() {
        return Err(Error::InvalidInput("Becker decomposition needs a homogeneous equation".into()));
    }
    let f = eq.field();
    let p0 = eq.coeff(0);
    if !f.is_one(&p0.coeff(0)) {
        return Err(Error::ConstantTermNotOne);
    }
    let k = eq.base();
    let n = series.precision();
    let h = infinite_product(p0, k, n)?;
    let product_inverse = h.invert()?;
    let becker_part = h.mul(series);
    let mut coeffs = Vec::with_capacity(eq.order() + 1);
    coeffs.push(Poly::one(f.clone()));
    let mut prod = Poly::one(f.clone());
    for i in 1..=eq.order() {
        if i >= 2 {
            let s = checked_pow(k, i - 1).ok_or(Error::PrecisionExhausted)?;
            prod = prod.mul(&p0.substitute_power(s));
        }
        // stored coefficient is −Bᵢ = Pᵢ·∏_{j=1}^{i−1} P₀(x^{k^j})
        coeffs.push(eq.coeff(i).mul(&prod));
    }
    let becker_equation = MahlerEquation::homogeneous(k, coeffs)?;
    if let Verification::FailsAt(i) = becker_equation.verify(&becker_part)? {
        return Err(Error::VerificationFailed { index: i });
    }
    if let Some(i) = product_inverse.mul(&becker_part).first_difference(series) {
        return Err(Error::VerificationFailed { index: i });
    }
    Ok(BeckerDecomposition { product_inverse, becker_part, becker_equation, certified_to: n })
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::field::Rationals;
    use alloc::vec;

    #[test]
    fn geometric_series_decomposition() {
        let n = 512;
        let f = Series::from_fraction(&q(&[1]), &q(&[1, -3]), n).unwrap();
        let eq = MahlerEquation::homogeneous(2, vec![q(&[1, -3]), q(&[-1, 0, 3])]).unwrap();
        let d = becker_decompose(&eq, &f).unwrap();
        // G = ∏_{j≥1} (1 − 3x^{2^j})
        let mut g = Series::from_poly(&q(&[1]), n);
        let mut s = 2;
        while s < n {
            g = g.mul_poly(&q(&[1, -3]).substitute_power(s));
            s *= 2;
        }
        assert_eq!(d.becker_part, g);
        assert_eq!(d.becker_coeffs(), vec![q(&[1, 0, -3])]);
        assert_eq!(d.becker_equation.coeff(0), &q(&[1]));
    }

    #[test]
    fn trivial_product() {
        let ones = Series::from_i64s(Rationals, &[1; 64]);
        let eq1 = MahlerEquation::homogeneous(2, vec![q(&[1]), q(&[-1, -1])]).unwrap();
        let d = becker_decompose(&eq1, &ones).unwrap();
        assert_eq!(d.becker_part, ones);
        assert_eq!(d.becker_coeffs(), vec![q(&[1, 1])]);
    }

    #[test]
    fn binary_expansion_identity() {
        // (1 + x) F(x) − F(x²) = 0 with F = ∏ (1 + x^{2^j})⁻¹ = 1 − x
        let f = Series::from_i64s(Rationals, &{
            let mut v = [0i64; 128];
            v[0] = 1;
            v[1] = -1;
            v
        });
        let eq = MahlerEquation::homogeneous(2, vec![q(&[1, 1]), q(&[-1])]).unwrap();
        let d = becker_decompose(&eq, &f).unwrap();
        assert_eq!(d.product_inverse, f);
        assert_eq!(d.becker_part, Series::from_poly(&q(&[1]), 128));
    }

    #[test]
    fn needs_unit_constant_term() {
        let f = pow_indicator(2, 32);
        assert_eq!(becker_decompose(&pow2_homogeneous(), &f), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn higher_order_coefficients() {
        // order-2 equation built from the shifted power indicator
        let f = pow_indicator(2, 600);
        let d = super::super::shift_decompose(&pow2_homogeneous(), &f).unwrap();
        let b = becker_decompose(&d.tail_equation, &d.tail_series).unwrap();
        assert_eq!(b.becker_equation.order(), d.tail_equation.order());
        let p0 = d.tail_equation.coeff(0);
        let expect = d.tail_equation.coeff(2).mul(&p0.substitute_power(2)).neg();
        assert_eq!(b.becker_coeffs()[1], expect);
    }
}
