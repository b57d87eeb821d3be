use alloc::vec::Vec;

use super::MahlerEquation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Removes A by combining the equation with its image under x ↦ x^k:
/// Bᵢ = Pᵢ(x)·A(x^k) − P_{i−1}(x^k)·A(x), raising the order by one.
pub fn eliminate_inhomogeneous<F: Field>(eq: &MahlerEquation<F>) -> Result<MahlerEquation<F>> {
    if eq.is_homogeneous() {
        return Ok(eq.clone());
    }
    let k = eq.base();
    let a = eq.inhomogeneous();
    let ak = a.substitute_power(k);
    let zero = Poly::zero(eq.field().clone());
    let n = eq.order();
    let coeffs = (0..=n + 1)
        .map(|i| {
            let cur = if i <= n { eq.coeff(i).mul(&ak) } else { zero.clone() };
            let prev = if i >= 1 { eq.coeff(i - 1).substitute_power(k).mul(a) } else { zero.clone() };
            cur.sub(&prev)
        })
        .collect();
    MahlerEquation::new(k, coeffs, zero.clone())
}

/// Homogeneous form with P₀ ≠ 0, Pₙ ≠ 0 and coprime coefficients, P₀'s
/// lowest coefficient scaled to 1.
pub fn normalize<F: Field>(eq: &MahlerEquation<F>) -> Result<MahlerEquation<F>> {
    let k = eq.base();
    let eq = eliminate_inhomogeneous(eq)?;
    let mut coeffs: Vec<Poly<F>> = eq.coeffs().to_vec();
    if coeffs.iter().all(|p| p.is_zero()) {
        return Err(Error::DegenerateEquation);
    }
    while coeffs[0].is_zero() {
        let j = coeffs.iter().position(|p| !p.is_zero()).expect("some nonzero");
        let a = coeffs[j].ord().expect("nonzero");
        let b = a % k;
        coeffs = coeffs[1..].iter().map(|p| p.cartier(k, b)).collect();
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|p| p.is_zero()) {
        coeffs.pop();
    }
    let g = coeffs.iter().fold(Poly::zero(eq.field().clone()), |g, p| g.gcd(p));
    let coeffs: Vec<Poly<F>> = coeffs.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
    let f = eq.field();
    let s = f.inv(coeffs[0].lowest().expect("P0 nonzero")).expect("nonzero");
    Ok(MahlerEquation::homogeneous(k, coeffs)?.scale(&s))
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use alloc::vec;

    #[test]
    fn normal_form_of_power_indicator_equation() {
        let n = normalize(&pow2_inhomogeneous()).unwrap();
        assert_eq!(n, pow2_homogeneous());
        assert!(n.is_normalized());
        assert!(n.verify(&pow_indicator(2, 4096)).unwrap().holds());
    }

    #[test]
    fn fixpoint_up_to_scaling() {
        let eq = pow2_homogeneous();
        assert_eq!(normalize(&eq).unwrap(), eq);
        let scaled = eq.scale(&crate::field::Field::from_i64(&crate::field::Rationals, -7));
        assert_eq!(normalize(&scaled).unwrap(), eq);
    }

    #[test]
    fn cartier_step_lowers_order() {
        let eq = MahlerEquation::homogeneous(2, vec![q(&[]), q(&[0, 1])]).unwrap();
        let n = normalize(&eq).unwrap();
        assert_eq!(n.order(), 0);
        assert_eq!(n.coeff(0), &q(&[1]));
    }

    #[test]
    fn degenerate() {
        let eq = MahlerEquation::homogeneous(2, vec![q(&[])]).unwrap();
        assert_eq!(normalize(&eq), Err(Error::DegenerateEquation));
    }

    #[test]
    fn common_factor_removed() {
        let eq = MahlerEquation::homogeneous(2, vec![q(&[1, -3]).mul(&q(&[1, 1])), q(&[-1, 0, 3]).mul(&q(&[1, 1]))]).unwrap();
        let n = normalize(&eq).unwrap();
        assert_eq!(n, MahlerEquation::homogeneous(2, vec![q(&[1, -3]), q(&[-1, 0, 3])]).unwrap());
    }

    #[test]
    fn solutions_survive_normalization() {
        let f = pow_indicator(3, 500);
        let eq = MahlerEquation::new(3, vec![q(&[-1]), q(&[1])], q(&[0, 1])).unwrap();
        assert!(eq.verify(&f).unwrap().holds());
        let n = normalize(&eq).unwrap();
        assert!(n.is_normalized());
        assert!(n.verify(&f).unwrap().holds());
    }
}
