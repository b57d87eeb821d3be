use alloc::vec::Vec;

use super::{checked_pow, MahlerEquation, Verification};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::Series;

/// Number of initial terms `solve_series` insists on.
pub fn required_initial_terms<F: Field>(eq: &MahlerEquation<F>) -> Option<usize> {
    let v = eq.coeff(0).ord()?;
    Some(eq.max_degree() + v + 1)
}

/// Extends `initial` to `precision` terms by the coefficient recursion and
/// checks both the supplied prefix and the result against the equation.
pub fn solve_series<F: Field>(
    eq: &MahlerEquation<F>,
    initial: &[F::Elem],
    precision: usize,
) -> Result<Series<F>> {
    let needed = required_initial_terms(eq).ok_or(Error::DegenerateEquation)?;
    if initial.len() < needed {
        return Err(Error::UnderdeterminedInput { needed, given: initial.len() });
    }
    let v = eq.coeff(0).ord().expect("P0 nonzero");
    let prefix = Series::new(eq.field().clone(), initial.to_vec());
    if let Some(t) = eq.residual(&prefix)?.ord() {
        return Err(Error::InconsistentInitialSegment { index: t.saturating_sub(v) });
    }
    extend_series(eq, initial, precision)
}

/// The recursion without the initial-count requirement: needs only
/// ord(P₀)+1 terms. Used where extra terms are implied (Becker series).
pub fn extend_series<F: Field>(
    eq: &MahlerEquation<F>,
    initial: &[F::Elem],
    precision: usize,
) -> Result<Series<F>> {
    let f = eq.field();
    let p0 = eq.coeff(0);
    let v = p0.ord().ok_or(Error::DegenerateEquation)?;
    if initial.len() < v + 1 {
        return Err(Error::UnderdeterminedInput { needed: v + 1, given: initial.len() });
    }
    let neg_c_inv = f.neg(&f.inv(&p0.coeffs()[v]).expect("nonzero"));
    let k = eq.base();
    let terms: Vec<(usize, usize, F::Elem)> = eq
        .coeffs()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(move |(j, c)| !f.is_zero(c) && !(i == 0 && *j == v))
                .map(move |(j, c)| (i, j, c.clone()))
        })
        .collect();
    let powers: Vec<Option<usize>> = (0..=eq.order()).map(|i| checked_pow(k, i)).collect();
    let mut out: Vec<F::Elem> = initial.iter().take(precision).cloned().collect();
    for m in out.len()..precision {
        let t = m + v;
        let mut s = eq.inhomogeneous().coeff(t);
        for (i, j, c) in &terms {
            if *j > t {
                continue;
            }
            let idx = t - j;
            let Some(step) = powers[*i] else { continue };
            if idx % step == 0 {
                let n = idx / step;
                debug_assert!(n < m);
                s = f.add(&s, &f.mul(c, &out[n]));
            }
        }
        out.push(f.mul(&s, &neg_c_inv));
    }
    let series = Series::new(f.clone(), out);
    match eq.verify(&series)? {
        Verification::HoldsTo(_) => Ok(series),
        Verification::FailsAt(t) => Err(Error::InconsistentInitialSegment { index: t.saturating_sub(v) }),
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Poly;
    use alloc::vec;

    fn ones_eq() -> MahlerEquation<Rationals> {
        MahlerEquation::homogeneous(2, vec![q(&[1]), q(&[-1, -1])]).unwrap()
    }

    #[test]
    fn all_ones() {
        let s = solve_series(&ones_eq(), &[Rationals.one(), Rationals.one()], 32).unwrap();
        assert_eq!(s, Series::from_i64s(Rationals, &[1; 32]));
    }

    #[test]
    fn power_indicator_from_homogeneous_equation() {
        let init: Vec<_> = [0, 1, 1, 0, 1].iter().map(|&v| Rationals.from_i64(v)).collect();
        let s = solve_series(&pow2_homogeneous(), &init, 64).unwrap();
        assert_eq!(s, pow_indicator(2, 64));
    }

    #[test]
    fn inconsistent_prefix() {
        let r = solve_series(&ones_eq(), &[Rationals.one(), Rationals.zero()], 8);
        assert_eq!(r, Err(Error::InconsistentInitialSegment { index: 1 }));
    }

    #[test]
    fn underdetermined() {
        let r = solve_series(&ones_eq(), &[Rationals.one()], 8);
        assert_eq!(r, Err(Error::UnderdeterminedInput { needed: 2, given: 1 }));
        assert!(extend_series(&ones_eq(), &[Rationals.one()], 8).is_ok());
    }

    #[test]
    fn modular_geometric_series() {
        let f5 = PrimeField::new(5).unwrap();
        let eq = MahlerEquation::homogeneous(
            2,
            vec![Poly::from_i64s(f5, &[1, -3]), Poly::from_i64s(f5, &[-1, 0, 3])],
        )
        .unwrap();
        let s = solve_series(&eq, &[1, 3, 4], 12).unwrap();
        let expect: Vec<u64> = (0..12u32).map(|n| 3u64.pow(n) % 5).collect();
        assert_eq!(s.coeffs(), &expect[..]);
    }
}
