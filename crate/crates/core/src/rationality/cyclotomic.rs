use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{factorize, Field, Rationals};
use crate::poly::Poly;

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Φ_n, monic, via the Möbius product of (x^d − 1).
pub fn cyclotomic_polynomial(n: u64) -> Poly<Rationals> {
    assert!(n >= 1);
    let q = Rationals;
    let mut num = Poly::one(q);
    let mut den = Poly::one(q);
    for d in (1..=n).filter(|d| n % d == 0) {
        let xd = Poly::monomial(q, q.one(), d as usize).sub(&Poly::one(q));
        match mobius(n / d) {
            1 => num = num.mul(&xd),
            -1 => den = den.mul(&xd),
            _ => {}
        }
    }
    num.exact_div(&den).expect("Möbius product is a polynomial")
}

/// Φ_n scaled to constant term 1: 1 − x for n = 1, Φ_n itself otherwise.
pub fn reciprocal_cyclotomic(n: u64) -> Poly<Rationals> {
    let p = cyclotomic_polynomial(n);
    if n == 1 {
        p.neg()
    } else {
        p
    }
}

/// All n with φ(n) ≤ bound, ascending. φ(n) ≥ √(n/2) caps the search.
fn indices_up_to_phi(bound: u64) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    (1..=2 * bound * bound + 2).filter(|&n| euler_phi(n) <= bound).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// Product of the root-of-unity factors, constant term 1.
    pub unit_part: Poly<Rationals>,
    pub free_part: Poly<Rationals>,
    /// (n, multiplicity) for each Φ_n dividing the input, ascending in n.
    pub indices: Vec<(u64, u32)>,
    /// Whether the unit part was confirmed by stripping gcds with x^L − 1.
    pub gcd_cross_checked: bool,
}

const CROSS_CHECK_LIMIT: u64 = 4096;

pub fn cyclotomic_split(p: &Poly<Rationals>) -> Result<CyclotomicSplit> {
    let q = Rationals;
    if p.coeff(0) != q.one() {
        return Err(Error::ConstantTermNotOne);
    }
    let deg = p.degree_or_zero() as u64;
    let candidates = indices_up_to_phi(deg);
    let mut rest = p.clone();
    let mut unit = Poly::one(q);
    let mut indices = Vec::new();
    for &n in &candidates {
        let phi = reciprocal_cyclotomic(n);
        let mut m = 0;
        while let Some(r) = rest.exact_div(&phi) {
            rest = r;
            unit = unit.mul(&phi);
            m += 1;
        }
        if m > 0 {
            indices.push((n, m));
        }
    }
    let l = candidates.iter().fold(1u64, |acc, &n| acc.lcm(&n));
    let gcd_cross_checked = l <= CROSS_CHECK_LIMIT && !candidates.is_empty();
    if gcd_cross_checked {
        let mut s = p.clone();
        let mut stripped = Poly::one(q);
        loop {
            // gcd(s, x^L − 1) = gcd(s, (x^L mod s) − 1)
            let g = s.gcd(&x_pow_mod(l, &s).sub(&Poly::one(q)));
            if g.degree_or_zero() == 0 {
                break;
            }
            s = s.exact_div(&g).expect("gcd divides");
            stripped = stripped.mul(&g);
        }
        if stripped.normalize_lowest() != unit {
            return Err(Error::VerificationFailed { index: 0 });
        }
    }
    Ok(CyclotomicSplit { unit_part: unit, free_part: rest, indices, gcd_cross_checked })
}

fn x_pow_mod(mut e: u64, m: &Poly<Rationals>) -> Poly<Rationals> {
    let q = Rationals;
    let mut base = Poly::monomial(q, q.one(), 1).div_rem(m).1;
    let mut acc = Poly::one(q).div_rem(m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).div_rem(m).1;
        }
        base = base.mul(&base).div_rem(m).1;
        e >>= 1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedRootCheck {
    Ok,
    /// Least index n whose primitive n-th roots satisfy α^{k^j} = α.
    Violation(u64),
}

/// α of order n is fixed by some α ↦ α^{k^j}, j ≥ 1, exactly when k is a
/// unit modulo n.
pub fn fixed_root_check(indices: &[(u64, u32)], k: u64) -> FixedRootCheck {
    indices
        .iter()
        .map(|&(n, _)| n)
        .filter(|n| n.gcd(&k) == 1)
        .min()
        .map_or(FixedRootCheck::Ok, FixedRootCheck::Violation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), q(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), q(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), q(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), q(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient outside {−1,0,1}.
        assert!(cyclotomic_polynomial(105).coeffs().contains(&Rationals.from_i64(-2)));
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn split_examples() {
        let s = cyclotomic_split(&q(&[1, -1]).mul(&q(&[1, -3]))).unwrap();
        assert_eq!(s.unit_part, q(&[1, -1]));
        assert_eq!(s.free_part, q(&[1, -3]));
        assert_eq!(s.indices, vec![(1, 1)]);
        assert!(s.gcd_cross_checked);

        let s = cyclotomic_split(&q(&[1])).unwrap();
        assert_eq!((s.unit_part, s.free_part), (q(&[1]), q(&[1])));

        let p = q(&[1, 1, 1]).pow(2);
        let s = cyclotomic_split(&p).unwrap();
        assert_eq!(s.unit_part, p);
        assert_eq!(s.free_part, q(&[1]));
        assert_eq!(s.indices, vec![(3, 2)]);
    }

    #[test]
    fn split_mixed_product() {
        // (1 + x)(1 + x²)(1 − x + x²)(1 − 2x + 5x²)
        let free = q(&[1, -2, 5]);
        let p = q(&[1, 1]).mul(&q(&[1, 0, 1])).mul(&q(&[1, -1, 1])).mul(&free);
        let s = cyclotomic_split(&p).unwrap();
        assert_eq!(s.free_part, free);
        assert_eq!(s.indices, vec![(2, 1), (4, 1), (6, 1)]);
        assert_eq!(s.unit_part.mul(&s.free_part), p);
    }

    #[test]
    fn rejects_bad_constant_term() {
        assert_eq!(cyclotomic_split(&q(&[2, 1])), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn fixed_root_examples() {
        assert_eq!(fixed_root_check(&[(1, 1)], 2), FixedRootCheck::Violation(1));
        assert_eq!(fixed_root_check(&[(2, 1)], 2), FixedRootCheck::Ok);
        assert_eq!(fixed_root_check(&[(3, 1)], 2), FixedRootCheck::Violation(3));
        assert_eq!(fixed_root_check(&[(3, 1)], 3), FixedRootCheck::Ok);
        assert_eq!(fixed_root_check(&[(4, 1), (3, 2), (9, 1)], 2), FixedRootCheck::Violation(3));
    }

    #[test]
    fn fixed_root_matches_brute_force() {
        for n in 1..=200u64 {
            for k in 2..=16u64 {
                let mut pw = 1u64;
                let mut fixed = false;
                // the order of k mod n is below n, so j ≤ n is exhaustive
                for _ in 1..=n {
                    pw = pw * k % n;
                    // α^{k^j} = α  ⇔  k^j ≡ 1 (mod n)
                    if pw % n == 1 % n {
                        fixed = true;
                        break;
                    }
                }
                let verdict = fixed_root_check(&[(n, 1)], k);
                assert_eq!(verdict == FixedRootCheck::Violation(n), fixed, "n={n} k={k}");
            }
        }
    }
}
