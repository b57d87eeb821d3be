use alloc::vec;

use num_integer::Integer;

use super::becker_auto::{becker_automatize_from, BeckerAutomaton, VALIDATION_TERMS};
use super::linrep::{representation_product, LinearRepresentation};
use crate::error::{Error, Result};
use crate::field::{powmod, Field, PrimeField, Rationals};
use crate::mahler::MahlerEquation;
use crate::poly::Poly;
use crate::rationality::{euler_phi, reciprocal_cyclotomic};
use crate::series::Series;

/// Q and S with Q(x^k) = (1 − ax)·S(x)·Q(x), so that ∏_j (1 − a x^{k^j})⁻¹
/// equals Q·G for the solution G of G(x) = S(x)·G(x^k), G(0) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitProduct<F: Field> {
    /// Least N ≥ 1 where the orbit a, a^k, a^{k²}, … satisfies a^{k^N} = a^{k^{2N}}.
    pub stabilization_index: usize,
    pub q: Poly<F>,
    pub s: Poly<F>,
}

fn pow_k_j(a: u64, k: u64, j: usize, p: u64) -> u64 {
    // a^{k^j} = a^{k^j mod (p−1)} for units
    let e = powmod(k % (p - 1), j as u64, p - 1);
    let e = if e == 0 { p - 1 } else { e };
    powmod(a, e, p)
}

pub fn unit_product_mod_p(f: PrimeField, a: u64, k: usize) -> Result<UnitProduct<PrimeField>> {
    let p = f.modulus();
    let a = a % p;
    if a == 0 {
        return Err(Error::PurelyPeriodicOrbit);
    }
    let k64 = k as u64;
    let n = (1..=p as usize)
        .find(|&n| pow_k_j(a, k64, n, p) == pow_k_j(a, k64, 2 * n, p))
        .expect("the orbit of a unit is eventually periodic within p steps");
    let b = pow_k_j(a, k64, n, p);
    if b == a {
        return Err(Error::PurelyPeriodicOrbit);
    }
    let mut q = Poly::one(f);
    let mut e = 1usize;
    for _ in 0..n {
        q = q.mul(&Poly::one(f).sub(&Poly::monomial(f, b, e)));
        e = e.checked_mul(k).ok_or(Error::DegreeBoundOverflow)?;
    }
    let lin = Poly::new(f, vec![1, f.neg(&a)]);
    let s = q.substitute_power(k).exact_div(&lin.mul(&q)).ok_or(Error::VerificationFailed { index: 0 })?;
    Ok(UnitProduct { stabilization_index: n, q, s })
}

/// The norm over all primitive n-th roots ω of the 𝔽_p construction:
/// Q = ∏_{j<N} Φ*_m(x^{k^j})^{φ(n)/φ(m)} with m the order of ω^{k^N}, and
/// S = Q(x^k)/(Φ*_n·Q).
pub fn unit_product_root_of_unity(order: u64, k: usize) -> Result<UnitProduct<Rationals>> {
    if order == 0 {
        return Err(Error::InvalidInput("root of unity order must be positive".into()));
    }
    let k64 = k as u64;
    if order.gcd(&k64) == 1 {
        return Err(Error::PurelyPeriodicOrbit);
    }
    let kpow = |j: usize| powmod(k64 % order, j as u64, order);
    let n = (1..=order as usize + 64)
        .find(|&n| kpow(2 * n) == kpow(n))
        .expect("k^j mod n is eventually periodic");
    let m = order / order.gcd(&kpow(n));
    let base = reciprocal_cyclotomic(m).pow((euler_phi(order) / euler_phi(m)) as usize);
    let mut q = Poly::one(Rationals);
    let mut e = 1usize;
    for _ in 0..n {
        q = q.mul(&base.substitute_power(e));
        e = e.checked_mul(k).ok_or(Error::DegreeBoundOverflow)?;
    }
    let s = q
        .substitute_power(k)
        .exact_div(&reciprocal_cyclotomic(order).mul(&q))
        .ok_or(Error::VerificationFailed { index: 0 })?;
    Ok(UnitProduct { stabilization_index: n, q, s })
}

/// Representation of H = ∏_j (1 − a x^{k^j})⁻¹ over 𝔽_p on the basis
/// H/(1 − e·x), e ∈ {0} ∪ {a^{kⁱ} : i ≥ 1}. Since H = H(x^k)/(1 − ax),
/// Λ_b(H/(1 − ex)) = Λ_b(1/((1 − ax)(1 − ex)))·H, and partial fractions with
/// Λ_b(1/(1 − cx)) = c^b/(1 − c^k x) keep the span closed. Needs a outside
/// its own orbit. Checked against the inverted product on
/// [`VALIDATION_TERMS`] coefficients.
pub fn unit_product_representation(f: PrimeField, a: u64, k: usize) -> Result<LinearRepresentation<PrimeField>> {
    let p = f.modulus();
    let a = a % p;
    if a == 0 {
        return Err(Error::PurelyPeriodicOrbit);
    }
    let mut basis = vec![0u64];
    let mut e = f.pow(&a, k as u64);
    while !basis.contains(&e) {
        if e == a {
            return Err(Error::PurelyPeriodicOrbit);
        }
        basis.push(e);
        e = f.pow(&e, k as u64);
    }
    let index = |c: u64| basis.iter().position(|&b| b == c).expect("orbit is closed");
    let dim = basis.len();
    let mut matrices = vec![vec![vec![0u64; dim]; dim]; k];
    for (b, m) in matrices.iter_mut().enumerate() {
        let ak = index(f.pow(&a, k as u64));
        for (col, &e) in basis.iter().enumerate() {
            let ab = f.pow(&a, b as u64);
            if e == 0 {
                m[ak][col] = f.add(&m[ak][col], &ab);
                continue;
            }
            // 1/((1 − ax)(1 − ex)) = (a/(a − e))/(1 − ax) − (e/(a − e))/(1 − ex)
            let inv = f.inv(&f.sub(&a, &e)).expect("a is not in its orbit");
            let ca = f.mul(&f.mul(&a, &inv), &ab);
            let ce = f.neg(&f.mul(&f.mul(&e, &inv), &f.pow(&e, b as u64)));
            let ek = index(f.pow(&e, k as u64));
            m[ak][col] = f.add(&m[ak][col], &ca);
            m[ek][col] = f.add(&m[ek][col], &ce);
        }
    }
    let row = vec![1u64; dim];
    let mut column = vec![0u64; dim];
    column[0] = 1;
    let rep = LinearRepresentation::new(f, k, row, matrices, column)?.minimize();
    let mut prod = Poly::one(f);
    let mut step = 1usize;
    while step < VALIDATION_TERMS {
        prod = prod.mul(&Poly::one(f).sub(&Poly::monomial(f, a, step)));
        step = step.saturating_mul(k);
    }
    let target = Series::from_poly(&prod, VALIDATION_TERMS).invert()?;
    for n in 0..VALIDATION_TERMS {
        if rep.eval(n as u64) != *target.coeff(n) {
            return Err(Error::VerificationFailed { index: n });
        }
    }
    Ok(rep)
}

/// Automaton for ∏_j (1 − a x^{k^j})⁻¹ over 𝔽_p, checked against the
/// product of the representations of Q and G.
pub fn unit_product_automatize(
    f: PrimeField,
    a: u64,
    k: usize,
) -> Result<(UnitProduct<PrimeField>, BeckerAutomaton)> {
    let up = unit_product_mod_p(f, a, k)?;
    let eq = MahlerEquation::homogeneous(k, vec![Poly::one(f), up.s.neg()])?;
    let auto = becker_automatize_from(&eq, &[1], &up.q)?;
    let g = becker_automatize_from(&eq, &[1], &Poly::one(f))?;
    let prod = representation_product(&LinearRepresentation::from_polynomial(&up.q, k), &g.representation)?;
    for n in 0..VALIDATION_TERMS {
        if prod.eval(n as u64) != auto.dfao.eval(n as u64) {
            return Err(Error::VerificationFailed { index: n });
        }
    }
    Ok((up, auto))
}

#[cfg(test)]
mod tests {
    use super::super::becker_auto::becker_representation;
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn worked_example_f5() {
        let f5 = fp(5);
        let up = unit_product_mod_p(f5, 2, 2).unwrap();
        assert_eq!(up.stabilization_index, 2);
        assert_eq!(up.q, Poly::from_i64s(f5, &[1, -1]).mul(&Poly::from_i64s(f5, &[1, 0, -1])));
        assert_eq!(up.s, Poly::from_i64s(f5, &[1, 3, 2]));
    }

    #[test]
    fn fixed_point_rejected() {
        assert_eq!(unit_product_mod_p(fp(5), 1, 2), Err(Error::PurelyPeriodicOrbit));
        // 2 → 4 → 2 under squaring mod 7 is a pure cycle
        assert_eq!(unit_product_mod_p(fp(7), 2, 2), Err(Error::PurelyPeriodicOrbit));
        assert_eq!(unit_product_root_of_unity(1, 2), Err(Error::PurelyPeriodicOrbit));
        assert_eq!(unit_product_root_of_unity(3, 2), Err(Error::PurelyPeriodicOrbit));
    }

    #[test]
    fn minus_one_in_base_two() {
        let up = unit_product_root_of_unity(2, 2).unwrap();
        assert_eq!(up.stabilization_index, 1);
        assert_eq!(up.q, Poly::from_i64s(Rationals, &[1, -1]));
        assert_eq!(up.s, Poly::one(Rationals));
    }

    #[test]
    fn root_of_unity_identity() {
        for order in 2..=30u64 {
            for k in 2..=4usize {
                // keep Q small: skip pairs whose orbit takes long to settle
                let kp = |j: u32| (k as u64).pow(j) % order;
                if !(1..=3).any(|n| kp(2 * n) == kp(n)) && order.gcd(&(k as u64)) > 1 {
                    continue;
                }
                match unit_product_root_of_unity(order, k) {
                    Ok(up) => {
                        let lhs = up.q.substitute_power(k);
                        let rhs = reciprocal_cyclotomic(order).mul(&up.s).mul(&up.q);
                        assert_eq!(lhs, rhs, "order={order} k={k}");
                    }
                    Err(e) => {
                        assert_eq!(e, Error::PurelyPeriodicOrbit);
                        assert_eq!(order.gcd(&(k as u64)), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn modular_identity_all_units() {
        for p in [5u64, 7, 11, 13] {
            let f = fp(p);
            for k in 2..=4 {
                for a in 1..p {
                    if let Ok(up) = unit_product_mod_p(f, a, k) {
                        let lin = Poly::new(f, vec![1, f.neg(&a)]);
                        assert_eq!(up.q.substitute_power(k), lin.mul(&up.s).mul(&up.q));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_representation_agrees_with_becker_route() {
        for p in [5u64, 7, 11, 13, 31] {
            let f = fp(p);
            for k in 2..=3 {
                for a in 1..p {
                    let direct = unit_product_representation(f, a, k);
                    let Ok(up) = unit_product_mod_p(f, a, k) else {
                        assert_eq!(direct, Err(Error::PurelyPeriodicOrbit));
                        continue;
                    };
                    let direct = direct.unwrap();
                    assert!(direct.dim() <= p as usize);
                    if up.q.degree_or_zero() > 64 {
                        continue;
                    }
                    let eq = MahlerEquation::homogeneous(k, vec![Poly::one(f), up.s.neg()]).unwrap();
                    let (via_q, _) = becker_representation(&eq, &[1], &up.q).unwrap();
                    for n in 0..1024u64 {
                        assert_eq!(direct.eval(n), via_q.eval(n), "p={p} a={a} k={k} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn automaton_matches_inverted_product() {
        let f5 = fp(5);
        let (_, auto) = unit_product_automatize(f5, 2, 2).unwrap();
        let mut prod = Poly::one(f5);
        let mut e = 1;
        while e < 2048 {
            prod = prod.mul(&Poly::one(f5).sub(&Poly::monomial(f5, 2, e)));
            e *= 2;
        }
        let inv = Series::from_poly(&prod, 2048).invert().unwrap();
        for n in 0..2048 {
            assert_eq!(auto.dfao.eval(n as u64), *inv.coeff(n), "n={n}");
        }
    }
}
