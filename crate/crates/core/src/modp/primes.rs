use alloc::vec::Vec;

use num_integer::Integer;

use super::reduce::reduce_poly;
use crate::field::{powmod, primes_up_to, Field, PrimeField, Rationals};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootWitness {
    /// a with 1 − a·x a factor of the reduced polynomial.
    pub a: u64,
    /// Least n ≥ 1 with 1 − a·x^{kⁿ} rootless mod p, if one is ≤ n_max.
    pub witness: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub p: u64,
    pub splits: bool,
    pub k_witnesses: Vec<RootWitness>,
    pub l_witnesses: Vec<RootWitness>,
    pub passed: bool,
}

/// The a's with P = c·∏(1 − a·x) over 𝔽_p, with multiplicity, when P(0) ≠ 0
/// and P splits; `None` otherwise.
pub fn linear_roots(p: &Poly<PrimeField>) -> Option<Vec<u64>> {
    let f = *p.field();
    if f.is_zero(&p.coeff(0)) {
        return None;
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in 1..f.modulus() {
        let lin = Poly::new(f, alloc::vec![f.neg(&r), 1]);
        while rest.degree_or_zero() > 0 && f.is_zero(&rest.eval(&r)) {
            rest = rest.exact_div(&lin).expect("root gives a factor");
            out.push(f.inv(&r).expect("unit"));
        }
    }
    (rest.degree_or_zero() == 0).then_some(out)
}

/// Least n in 1..=n_max for which a⁻¹ is not a kⁿ-th power in 𝔽_p*.
fn witness(f: PrimeField, a: u64, k: u64, n_max: u32) -> Option<u32> {
    let p = f.modulus();
    let a_inv = f.inv(&a)?;
    (1..=n_max).find(|&n| {
        let g = powmod(k, n as u64, p - 1).gcd(&(p - 1));
        powmod(a_inv, (p - 1) / g, p) != 1
    })
}

/// Primes p ≤ p_max at which S₁ and T₁ keep their degree and constant term,
/// in ascending order, with splitting data and root witnesses.
pub fn prime_search(
    s1: &Poly<Rationals>,
    t1: &Poly<Rationals>,
    k: u64,
    l: u64,
    p_max: u64,
    n_max: u32,
) -> Vec<PrimeReport> {
    let mut out = Vec::new();
    for p in primes_up_to(p_max) {
        let f = PrimeField::new(p).expect("prime");
        let (Ok(s), Ok(t)) = (reduce_poly(f, s1), reduce_poly(f, t1)) else { continue };
        if s.degree() != s1.degree() || t.degree() != t1.degree() || f.is_zero(&s.coeff(0)) || f.is_zero(&t.coeff(0)) {
            continue;
        }
        let (rs, rt) = (linear_roots(&s), linear_roots(&t));
        let splits = rs.is_some() && rt.is_some();
        let mk = |roots: Option<Vec<u64>>, base: u64| -> Vec<RootWitness> {
            roots
                .unwrap_or_default()
                .into_iter()
                .map(|a| RootWitness { a, witness: witness(f, a, base, n_max) })
                .collect()
        };
        let k_witnesses = mk(rs, k);
        let l_witnesses = mk(rt, l);
        let passed = splits && k_witnesses.iter().chain(&l_witnesses).all(|w| w.witness.is_some());
        out.push(PrimeReport { p, splits, k_witnesses, l_witnesses, passed });
    }
    out
}
