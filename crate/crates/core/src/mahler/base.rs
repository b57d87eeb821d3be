use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::factorize;

/// Bases k' = k^{e₁}ℓ^{e₂}, ℓ' = k^{f₁}ℓ^{f₂} with a prime p | k', p ∤ ℓ'
/// and a prime q | ℓ', q ∤ k'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePair {
    pub k_prime: BigUint,
    pub l_prime: BigUint,
    pub p: u64,
    pub q: u64,
    /// (e₁, e₂) with k' = k^{e₁}·ℓ^{e₂}.
    pub k_exponents: (i64, i64),
    /// (f₁, f₂) with ℓ' = k^{f₁}·ℓ^{f₂}.
    pub l_exponents: (i64, i64),
}

/// Exponent vectors of k and ℓ over the union of their prime supports.
fn exponents(k: u64, l: u64) -> (Vec<u64>, Vec<i64>, Vec<i64>) {
    let fk = factorize(k);
    let fl = factorize(l);
    let mut primes: Vec<u64> = fk.iter().chain(fl.iter()).map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    let get = |f: &[(u64, u32)], p: u64| f.iter().find(|e| e.0 == p).map_or(0, |e| e.1 as i64);
    let a = primes.iter().map(|&p| get(&fk, p)).collect();
    let b = primes.iter().map(|&p| get(&fl, p)).collect();
    (primes, a, b)
}

/// kⁿ ≠ ℓᵐ for all positive n, m.
pub fn multiplicatively_independent(k: u64, l: u64) -> bool {
    if k < 2 || l < 2 {
        return false;
    }
    let (_, a, b) = exponents(k, l);
    !(0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

fn power(base: u64, e: i64) -> Ratio<BigUint> {
    let v = num_traits::pow(BigUint::from(base), e.unsigned_abs() as usize);
    if e >= 0 {
        Ratio::from_integer(v)
    } else {
        Ratio::new(BigUint::from(1u32), v)
    }
}

fn evaluate(k: u64, l: u64, e: (i64, i64)) -> BigUint {
    let r = power(k, e.0) * power(l, e.1);
    assert!(r.is_integer(), "construction yields an integer");
    r.to_integer()
}

pub fn base_pair(k: u64, l: u64) -> Result<BasePair> {
    if k < 2 || l < 2 {
        return Err(Error::InvalidInput("bases must be at least 2".into()));
    }
    if !multiplicatively_independent(k, l) {
        return Err(Error::MultiplicativelyDependent);
    }
    let (primes, a, b) = exponents(k, l);
    let only_l = a.iter().position(|&x| x == 0);
    let only_k = b.iter().position(|&x| x == 0);
    if let (Some(i), Some(j)) = (only_l, only_k) {
        return Ok(BasePair {
            k_prime: BigUint::from(k),
            l_prime: BigUint::from(l),
            p: primes[j],
            q: primes[i],
            k_exponents: (1, 0),
            l_exponents: (0, 1),
        });
    }
    if only_k.is_some() {
        // every prime of the union divides k: run with the roles swapped
        let r = base_pair(l, k)?;
        let swap = |e: (i64, i64)| (e.1, e.0);
        return Ok(BasePair {
            k_prime: r.l_prime,
            l_prime: r.k_prime,
            p: r.q,
            q: r.p,
            k_exponents: swap(r.l_exponents),
            l_exponents: swap(r.k_exponents),
        });
    }
    // every bᵢ > 0
    let ratio = |x: i64, y: i64| Ratio::new(x, y);
    let i0 = (0..primes.len())
        .min_by(|&x, &y| ratio(a[x], b[x]).cmp(&ratio(a[y], b[y])).then(x.cmp(&y)))
        .expect("nonempty");
    let c: Vec<i64> = (0..primes.len()).map(|j| a[j] * b[i0] - b[j] * a[i0]).collect();
    let mut i1 = 0;
    for j in 1..primes.len() {
        if ratio(c[j], b[j]) > ratio(c[i1], b[i1]) {
            i1 = j;
        }
    }
    let ke = (b[i0], -a[i0]);
    // ℓ' = ℓ^{c_{i₁}}·k'^{−b_{i₁}}
    let le = (-b[i1] * ke.0, c[i1] - b[i1] * ke.1);
    Ok(BasePair {
        k_prime: evaluate(k, l, ke),
        l_prime: evaluate(k, l, le),
        p: primes[i1],
        q: primes[i0],
        k_exponents: ke,
        l_exponents: le,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair(k: u64, l: u64) -> (u64, u64, u64, u64) {
        let r = base_pair(k, l).unwrap();
        (
            u64::try_from(r.k_prime).unwrap(),
            u64::try_from(r.l_prime).unwrap(),
            r.p,
            r.q,
        )
    }

    #[test]
    fn worked_examples() {
        assert_eq!(pair(2, 3), (2, 3, 2, 3));
        assert_eq!(pair(12, 18), (8, 729, 2, 3));
        assert_eq!(pair(6, 12), (3, 4, 3, 2));
        assert_eq!(base_pair(4, 8), Err(Error::MultiplicativelyDependent));
    }

    #[test]
    fn independence() {
        assert!(!multiplicatively_independent(4, 8));
        assert!(!multiplicatively_independent(6, 36));
        assert!(multiplicatively_independent(6, 12));
        assert!(multiplicatively_independent(2, 6));
    }

    pub(crate) fn satisfies_invariants(k: u64, l: u64, r: &BasePair) -> bool {
        let divides = |p: u64, n: &BigUint| (n % BigUint::from(p)).is_zero();
        let exps_ok = evaluate(k, l, r.k_exponents) == r.k_prime && evaluate(k, l, r.l_exponents) == r.l_prime;
        let indep = (1..=64u32).all(|m| {
            (1..=64u32).all(|n| num_traits::pow(r.k_prime.clone(), m as usize) != num_traits::pow(r.l_prime.clone(), n as usize))
        });
        exps_ok
            && divides(r.p, &r.k_prime)
            && !divides(r.p, &r.l_prime)
            && divides(r.q, &r.l_prime)
            && !divides(r.q, &r.k_prime)
            && r.k_prime > BigUint::one()
            && r.l_prime > BigUint::one()
            && indep
            && r.k_prime.gcd(&BigUint::from(1u32)).is_one()
    }

    #[test]
    fn random_pairs_meet_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut seen = 0;
        while seen < 100 {
            let k = rng.gen_range(2..=100);
            let l = rng.gen_range(2..=100);
            if !multiplicatively_independent(k, l) {
                continue;
            }
            let r = base_pair(k, l).unwrap();
            assert!(satisfies_invariants(k, l, &r), "({k}, {l}) -> {r:?}");
            seen += 1;
        }
    }
}
