use alloc::vec::Vec;

use super::{checked_pow, eliminate_inhomogeneous, MahlerEquation, Verification};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::Series;

/// F = head + x^a·tail_series, where tail_series(0) ≠ 0 and tail_series
/// satisfies tail_equation, whose P₀ has constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftDecomposition<F: Field> {
    pub a: usize,
    pub head: Poly<F>,
    pub tail_series: Series<F>,
    pub tail_equation: MahlerEquation<F>,
    pub certified_to: usize,
}

/// Shift at the least a > ord(P₀) with f(a) ≠ 0.
pub fn shift_decompose<F: Field>(eq: &MahlerEquation<F>, series: &Series<F>) -> Result<ShiftDecomposition<F>> {
    let v = eq.coeff(0).ord().ok_or(Error::DegenerateEquation)?;
    let f = series.field();
    let a = (v + 1..series.precision())
        .find(|&i| !f.is_zero(series.coeff(i)))
        .ok_or(Error::PolynomialInput)?;
    shift_decompose_at(eq, series, a)
}

/// Shift at a prescribed a; needs a > ord(P₀) and f(a) ≠ 0.
pub fn shift_decompose_at<F: Field>(
    eq: &MahlerEquation<F>,
    series: &Series<F>,
    a: usize,
) -> Result<ShiftDecomposition<F>> {
    if !eq.is_homogeneous() {
        return Err(Error::InvalidInput("shift needs a homogeneous equation".into()));
    }
    let f = series.field();
    let v = eq.coeff(0).ord().ok_or(Error::DegenerateEquation)?;
    if a <= v || a >= series.precision() || f.is_zero(series.coeff(a)) {
        return Err(Error::InvalidInput("shift index must exceed ord(P0) and hit a nonzero coefficient".into()));
    }
    if series.precision() - a < 2 {
        return Err(Error::PrecisionExhausted);
    }
    let k = eq.base();
    let head = Poly::new(f.clone(), series.coeffs()[..a].to_vec());
    // C = −Σ Pᵢ·T_a(x^{kⁱ}), divisible by x^{a+v} because the left side is.
    let mut c = Poly::zero(f.clone());
    for (i, p) in eq.coeffs().iter().enumerate() {
        let s = checked_pow(k, i).ok_or(Error::PrecisionExhausted)?;
        c = c.sub(&p.mul(&head.substitute_power(s)));
    }
    let c0 = c.shift_down(a + v).ok_or(Error::VerificationFailed { index: c.ord().unwrap_or(0) })?;
    let s = eq.coeff(0).shift_down(v).expect("ord");
    let mut coeffs = Vec::with_capacity(eq.order() + 1);
    coeffs.push(s);
    for i in 1..=eq.order() {
        let ki = checked_pow(k, i).ok_or(Error::PrecisionExhausted)?;
        let e = a.checked_mul(ki - 1).ok_or(Error::PrecisionExhausted)? - v;
        coeffs.push(eq.coeff(i).shift_up(e));
    }
    let inhom = MahlerEquation::new(k, coeffs, c0.neg())?;
    let tail_equation = if c0.is_zero() {
        inhom
    } else {
        let full = eliminate_inhomogeneous(&inhom)?;
        let g = c0.gcd(&c0.substitute_power(k));
        let reduced: Vec<Poly<F>> = full
            .coeffs()
            .iter()
            .map(|p| p.exact_div(&g).expect("common factor"))
            .collect();
        MahlerEquation::homogeneous(k, reduced)?
    };
    let q00 = tail_equation.coeff(0).coeff(0);
    let inv = f.inv(&q00).ok_or(Error::ConstantTermNotOne)?;
    let tail_equation = tail_equation.scale(&inv);
    let tail_series = Series::new(f.clone(), series.coeffs()[a..].to_vec());
    match tail_equation.verify(&tail_series)? {
        Verification::HoldsTo(m) => Ok(ShiftDecomposition { a, head, tail_series, tail_equation, certified_to: m }),
        Verification::FailsAt(i) => Err(Error::VerificationFailed { index: i }),
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::field::Rationals;
    use alloc::vec;

    #[test]
    fn power_indicator_shift() {
        let f = pow_indicator(2, 256);
        let d = shift_decompose(&pow2_homogeneous(), &f).unwrap();
        assert_eq!(d.a, 2);
        assert_eq!(d.head, q(&[0, 1]));
        let expect: Vec<i64> = (0..254).map(|n| ((n + 2usize).is_power_of_two()) as i64).collect();
        assert_eq!(d.tail_series, Series::from_i64s(Rationals, &expect));
        assert_eq!(d.tail_equation.coeff(0).coeff(0), Rationals.one());
        assert_eq!(d.certified_to, 254);
        let recon = Series::from_poly(&d.head, 256).add(&d.tail_series.shift_up(2));
        assert_eq!(recon, f);
    }

    #[test]
    fn roots_of_p0_survive() {
        // (1-x)(1-3x) F(x) - (1-3x^2) F(x^2) + x(1-3x^4) F(x^4) = 0 has F = 1/(1-3x)
        let f = Series::from_fraction(&q(&[1]), &q(&[1, -3]), 200).unwrap();
        let eq = MahlerEquation::homogeneous(
            2,
            vec![q(&[1, -1]).mul(&q(&[1, -3])), q(&[-1, 0, 3]), q(&[0, 1, 0, 0, 0, -3])],
        )
        .unwrap();
        assert!(eq.verify(&f).unwrap().holds());
        let d = shift_decompose(&eq, &f).unwrap();
        assert_eq!(d.a, 1);
        let q0 = d.tail_equation.coeff(0);
        assert!(q0.eval(&Rationals.one()) == Rationals.zero());
        assert!(q0.eval(&num_rational::BigRational::new(1.into(), 3.into())) == Rationals.zero());
    }

    #[test]
    fn polynomial_input() {
        let f = Series::from_i64s(Rationals, &[1, 0, 0, 0]);
        let eq = MahlerEquation::homogeneous(2, vec![q(&[1]), q(&[-1])]).unwrap();
        assert_eq!(shift_decompose(&eq, &f), Err(Error::PolynomialInput));
    }

    #[test]
    fn constant_term_nonzero_uses_smallest_index() {
        let f = Series::from_i64s(Rationals, &[1; 64]);
        let eq = MahlerEquation::homogeneous(2, vec![q(&[1]), q(&[-1, -1])]).unwrap();
        let d = shift_decompose(&eq, &f).unwrap();
        assert_eq!(d.a, 1);
        assert_eq!(d.tail_series.ord(), Some(0));
    }
}
