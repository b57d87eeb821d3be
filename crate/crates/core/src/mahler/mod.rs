//! k-Mahler equations A(x) + Σ Pᵢ(x)·F(x^{kⁱ}) = 0 and their transformations.

mod base;
mod becker;
mod find;
mod normalize;
mod shift;
mod solve;

pub use base::{base_pair, multiplicatively_independent, BasePair};
pub use becker::{becker_decompose, infinite_product, BeckerDecomposition};
pub use find::{derive_m_mahler, find_equation, FindBounds, FoundEquation};
pub use normalize::{eliminate_inhomogeneous, normalize};
pub use shift::{shift_decompose, shift_decompose_at, ShiftDecomposition};
pub use solve::{extend_series, solve_series};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahlerEquation<F: Field> {
    field: F,
    base: usize,
    coeffs: Vec<Poly<F>>,
    inhomogeneous: Poly<F>,
}

/// Result of checking an equation against a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    HoldsTo(usize),
    FailsAt(usize),
}

impl Verification {
    pub fn holds(&self) -> bool {
        matches!(self, Verification::HoldsTo(_))
    }
}

pub(crate) fn checked_pow(k: usize, i: usize) -> Option<usize> {
    k.checked_pow(u32::try_from(i).ok()?)
}

impl<F: Field> MahlerEquation<F> {
    /// Builds an equation; trailing zero coefficients are trimmed, but P₀ is
    /// always present.
    pub fn new(base: usize, mut coeffs: Vec<Poly<F>>, inhomogeneous: Poly<F>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidInput("base must be at least 2".into()));
        }
        let field = inhomogeneous.field().clone();
        if coeffs.iter().any(|p| p.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|p| p.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Poly::zero(field.clone()));
        }
        Ok(MahlerEquation { field, base, coeffs, inhomogeneous })
    }

    pub fn homogeneous(base: usize, coeffs: Vec<Poly<F>>) -> Result<Self> {
        let field = coeffs
            .first()
            .map(|p| p.field().clone())
            .ok_or_else(|| Error::InvalidInput("no coefficients".into()))?;
        Self::new(base, coeffs, Poly::zero(field))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly<F> {
        &self.coeffs[i]
    }

    pub fn inhomogeneous(&self) -> &Poly<F> {
        &self.inhomogeneous
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inhomogeneous.is_zero()
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.iter().map(|p| p.degree_or_zero()).max().unwrap_or(0)
    }

    /// A = 0, P₀ ≠ 0, Pₙ ≠ 0 and the Pᵢ are coprime.
    pub fn is_normalized(&self) -> bool {
        let g = self.coeffs.iter().fold(Poly::zero(self.field.clone()), |g, p| g.gcd(p));
        self.is_homogeneous()
            && !self.coeffs[0].is_zero()
            && !self.coeffs[self.order()].is_zero()
            && g.degree() == Some(0)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        MahlerEquation {
            field: self.field.clone(),
            base: self.base,
            coeffs: self.coeffs.iter().map(|p| p.scale(s)).collect(),
            inhomogeneous: self.inhomogeneous.scale(s),
        }
    }

    /// Coefficient-wise image under a map of fields.
    pub fn map_coeffs<G: Field>(
        &self,
        target: G,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<MahlerEquation<G>> {
        let mut conv = |p: &Poly<F>| -> Result<Poly<G>> {
            let c = p.coeffs().iter().map(&mut f).collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(target.clone(), c))
        };
        let coeffs = self.coeffs.iter().map(&mut conv).collect::<Result<Vec<_>>>()?;
        let a = conv(&self.inhomogeneous)?;
        MahlerEquation::new(self.base, coeffs, a)
    }

    /// A + Σ Pᵢ·F(x^{kⁱ}) on the precision of F.
    pub fn residual(&self, series: &Series<F>) -> Result<Series<F>> {
        if series.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let m = series.precision();
        let mut r = vec![f.zero(); m];
        for (j, c) in self.inhomogeneous.coeffs().iter().enumerate().take(m) {
            r[j] = c.clone();
        }
        for (i, p) in self.coeffs.iter().enumerate() {
            let Some(s) = checked_pow(self.base, i) else { break };
            for (j, c) in p.coeffs().iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let mut idx = j;
                let mut n = 0;
                while idx < m {
                    let fv = series.coeff(n);
                    if !f.is_zero(fv) {
                        r[idx] = f.add(&r[idx], &f.mul(c, fv));
                    }
                    n += 1;
                    idx += s;
                }
            }
        }
        Ok(Series::new(f.clone(), r))
    }

    pub fn verify(&self, series: &Series<F>) -> Result<Verification> {
        Ok(match self.residual(series)?.ord() {
            None => Verification::HoldsTo(series.precision()),
            Some(i) => Verification::FailsAt(i),
        })
    }
}

/// Free-function form of [`MahlerEquation::verify`].
pub fn verify_equation<F: Field>(eq: &MahlerEquation<F>, series: &Series<F>) -> Result<Verification> {
    eq.verify(series)
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn verify_power_indicator() {
        let f = pow_indicator(2, 64);
        assert_eq!(pow2_inhomogeneous().verify(&f), Ok(Verification::HoldsTo(64)));
        assert_eq!(pow2_homogeneous().verify(&f), Ok(Verification::HoldsTo(64)));
    }

    #[test]
    fn verify_zero_series() {
        let eq = pow2_homogeneous();
        assert_eq!(eq.verify(&Series::zero(Rationals, 17)), Ok(Verification::HoldsTo(17)));
    }

    #[test]
    fn verify_detects_corruption() {
        let mut c: Vec<_> = pow_indicator(2, 64).into_coeffs();
        c[4] = Rationals.add(&c[4], &Rationals.one());
        let f = Series::new(Rationals, c);
        assert_eq!(pow2_inhomogeneous().verify(&f), Ok(Verification::FailsAt(4)));
    }

    #[test]
    fn field_mismatch() {
        let f5 = crate::field::PrimeField::new(5).unwrap();
        let eq = MahlerEquation::homogeneous(2, alloc::vec![Poly::one(f5)]).unwrap();
        let bad = MahlerEquation::new(2, alloc::vec![Poly::one(f5)], Poly::zero(crate::field::PrimeField::new(7).unwrap()));
        assert_eq!(bad, Err(Error::FieldMismatch));
        assert!(eq.verify(&Series::zero(f5, 3)).is_ok());
    }

    #[test]
    fn trailing_zero_coefficients_are_trimmed() {
        let eq = MahlerEquation::homogeneous(3, alloc::vec![q(&[1]), q(&[2]), q(&[])]).unwrap();
        assert_eq!(eq.order(), 1);
        assert!(eq.is_normalized());
        assert!(!pow2_inhomogeneous().is_normalized());
    }
}
