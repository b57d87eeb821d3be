use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::closure::kernel_closure;
use super::dfao::Dfao;
use super::linrep::{col_times, LinearRepresentation};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::mahler::{extend_series, MahlerEquation};
use crate::poly::Poly;

/// Number of terms every Becker automaton is checked against.
pub const VALIDATION_TERMS: usize = 2048;

const KERNEL_ORBIT_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeckerAutomaton {
    pub dfao: Dfao,
    /// Minimal linear representation the automaton was closed from.
    pub representation: LinearRepresentation<PrimeField>,
    pub degree_bound: usize,
    /// Size of the k-kernel {n ↦ f(kʲn + r)}, when below the exploration cap.
    pub kernel_size: Option<usize>,
    pub validated_to: usize,
}

/// Least D with (D + max deg Bᵢ)/k ≤ D.
pub fn degree_bound(max_deg: usize, k: usize) -> usize {
    max_deg.div_ceil(k - 1)
}

/// Automaton for G, where G = Σ_{i≥1} Bᵢ(x)·G(x^{kⁱ}) over 𝔽_p.
pub fn becker_automatize_mod_p(eq: &MahlerEquation<PrimeField>, init: &[u64]) -> Result<BeckerAutomaton> {
    becker_automatize_from(eq, init, &Poly::one(*eq.field()))
}

/// Minimal linear representation of Q·G, checked against the series
/// solution on the first [`VALIDATION_TERMS`] coefficients. Returns the
/// representation and the degree bound D of the module it was built in.
pub fn becker_representation(
    eq: &MahlerEquation<PrimeField>,
    init: &[u64],
    start: &Poly<PrimeField>,
) -> Result<(LinearRepresentation<PrimeField>, usize)> {
    let f = *eq.field();
    let k = eq.base();
    if !eq.is_homogeneous() || eq.coeff(0) != &Poly::one(f) {
        return Err(Error::InvalidInput("equation is not in Becker form".into()));
    }
    let g = extend_series(eq, init, VALIDATION_TERMS)?;
    let target = g.mul_poly(start);
    let n = eq.order();
    let b: Vec<Poly<PrimeField>> = eq.coeffs()[1..].iter().map(|p| p.neg()).collect();
    let max_deg = b.iter().map(|p| p.degree_or_zero()).max().unwrap_or(0);
    let d = degree_bound(max_deg, k).max(start.degree_or_zero());
    let slots = n.max(1);
    let dim = slots * (d + 1);
    let at = |slot: usize, e: usize| (slot - 1) * (d + 1) + e;
    let mut matrices = vec![vec![vec![0u64; dim]; dim]; k];
    for digit in 0..k {
        let m = &mut matrices[digit];
        for slot in 1..=slots {
            for e in 0..=d {
                let x_e = Poly::monomial(f, 1, e);
                let col = at(slot, e);
                let images: Vec<(usize, Poly<PrimeField>)> = if slot == 1 {
                    // Q₁·G = Σ_j Q₁Bⱼ·G(x^{k^j})
                    (1..=n).map(|j| (j, x_e.mul(&b[j - 1]).cartier(k, digit))).collect()
                } else {
                    vec![(slot - 1, x_e.cartier(k, digit))]
                };
                for (target_slot, p) in images {
                    if p.degree_or_zero() > d {
                        return Err(Error::DegreeBoundOverflow);
                    }
                    for (e2, c) in p.coeffs().iter().enumerate() {
                        let r = at(target_slot, e2);
                        m[r][col] = f.add(&m[r][col], c);
                    }
                }
            }
        }
    }
    let g0 = init.first().copied().unwrap_or(0);
    let row: Vec<u64> = (0..dim).map(|i| if i % (d + 1) == 0 && n > 0 { g0 } else { 0 }).collect();
    let mut column = vec![0u64; dim];
    for (e, c) in start.coeffs().iter().enumerate() {
        column[at(1, e)] = *c;
    }
    let rep = LinearRepresentation::new(f, k, row, matrices, column)?.minimize();
    for i in 0..VALIDATION_TERMS {
        if rep.eval(i as u64) != *target.coeff(i) {
            return Err(Error::VerificationFailed { index: i });
        }
    }
    Ok((rep, d))
}

/// Automaton for Q·G: the Cartier closure started from the module element
/// with Q₁ = Q.
pub fn becker_automatize_from(
    eq: &MahlerEquation<PrimeField>,
    init: &[u64],
    start: &Poly<PrimeField>,
) -> Result<BeckerAutomaton> {
    let (representation, degree_bound) = becker_representation(eq, init, start)?;
    let kernel_size = orbit_size(&representation);
    let dfao = kernel_closure(&representation).minimize();
    let target = extend_series(eq, init, VALIDATION_TERMS)?.mul_poly(start);
    for i in 0..VALIDATION_TERMS {
        if dfao.eval(i as u64) != *target.coeff(i) {
            return Err(Error::VerificationFailed { index: i });
        }
    }
    Ok(BeckerAutomaton { dfao, representation, degree_bound, kernel_size, validated_to: VALIDATION_TERMS })
}

/// Size of the orbit of γ under the matrices of Λ_b.
fn orbit_size(rep: &LinearRepresentation<PrimeField>) -> Option<usize> {
    let f = *rep.field();
    let mut seen = BTreeSet::new();
    let mut queue = vec![rep.column().to_vec()];
    seen.insert(rep.column().to_vec());
    while let Some(c) = queue.pop() {
        for m in rep.matrices() {
            let next = col_times(&f, m, &c);
            if seen.insert(next.clone()) {
                if seen.len() > KERNEL_ORBIT_CAP {
                    return None;
                }
                queue.push(next);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn becker(f: PrimeField, k: usize, bs: &[&[i64]]) -> MahlerEquation<PrimeField> {
        let mut coeffs = vec![Poly::one(f)];
        coeffs.extend(bs.iter().map(|b| Poly::from_i64s(f, b).neg()));
        MahlerEquation::homogeneous(k, coeffs).unwrap()
    }

    #[test]
    fn rational_case_is_constant() {
        let f2 = fp(2);
        let a = becker_automatize_mod_p(&becker(f2, 2, &[&[1, 1]]), &[1]).unwrap();
        assert_eq!(a.dfao.states(), 1);
        assert_eq!(a.dfao.outputs(), &[1]);
    }

    #[test]
    fn worked_example_over_f5() {
        let f5 = fp(5);
        let eq = becker(f5, 2, &[&[1, 3, 2]]);
        let a = becker_automatize_mod_p(&eq, &[1]).unwrap();
        assert_eq!(a.degree_bound, 2);
        assert!(a.kernel_size.is_some());
        let g = extend_series(&eq, &[1], 2048).unwrap();
        for n in 0..2048 {
            assert_eq!(a.dfao.eval(n as u64), *g.coeff(n));
        }
    }

    #[test]
    fn constant_coefficients_collapse() {
        // G = G(x^2) forces G = g(0): after the first digit every word sits in
        // one absorbing state with output 0.
        let f7 = fp(7);
        let a = becker_automatize_mod_p(&becker(f7, 2, &[&[1]]), &[3]).unwrap();
        let d = &a.dfao;
        assert_eq!(d.outputs()[d.initial()], 3);
        let sink = d.step(d.initial(), 1);
        assert_eq!(d.outputs()[sink], 0);
        assert!((0..2).all(|b| d.step(sink, b) == sink));
        assert!(d.states() <= 2);
        let z = becker_automatize_mod_p(&becker(f7, 3, &[&[2], &[5]]), &[0]).unwrap();
        assert_eq!(z.dfao.states(), 1);
    }

    #[test]
    fn higher_order_becker_equation() {
        let f3 = fp(3);
        let eq = becker(f3, 2, &[&[1, 1], &[0, 2, 1]]);
        let a = becker_automatize_mod_p(&eq, &[1]).unwrap();
        assert_eq!(a.validated_to, 2048);
    }

    #[test]
    fn start_element_multiplies() {
        let f5 = fp(5);
        let eq = becker(f5, 2, &[&[1, 3, 2]]);
        let q = Poly::from_i64s(f5, &[1, -1, -1, 1]);
        let a = becker_automatize_from(&eq, &[1], &q).unwrap();
        let g = extend_series(&eq, &[1], 2048).unwrap().mul_poly(&q);
        for n in 0..2048 {
            assert_eq!(a.dfao.eval(n as u64), *g.coeff(n));
        }
    }

    #[test]
    fn rejects_non_becker_form() {
        let f5 = fp(5);
        let eq = MahlerEquation::homogeneous(2, vec![Poly::from_i64s(f5, &[1, 1]), Poly::from_i64s(f5, &[1])]).unwrap();
        assert!(becker_automatize_mod_p(&eq, &[1]).is_err());
    }
}
