//! Nullspaces: generic Gauss–Jordan, plus a multimodular route over ℚ that
//! lifts the mod-p RREF by CRT and rational reconstruction and then checks
//! the lifted vector exactly. Polynomial gcds over ℚ go the same way.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{is_prime, mulmod, powmod, Field, Kernel, Rationals};
use crate::poly::Poly;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub(&row[j], &field.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref<F: Field>(
    field: &F,
    m: &[Vec<F::Elem>],
    pivots: &[usize],
    ncols: usize,
) -> Option<Vec<F::Elem>> {
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![field.zero(); ncols];
    v[free] = field.one();
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = field.neg(&m[i][free]);
    }
    Some(v)
}

/// Exact Gauss–Jordan over any field.
pub fn gauss_kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Kernel<F::Elem> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    Kernel {
        rank: pivots.len(),
        vector: kernel_from_rref(field, &m, &pivots, ncols),
    }
}

const SMALL_SYSTEM: usize = 4096;
const MAX_PRIMES: usize = 400;

/// Kernel over ℚ. Small systems go through exact elimination; larger ones
/// through the multimodular lift, falling back to exact elimination if the
/// lift does not settle within the prime budget.
pub fn rational_kernel(rows: &[Vec<BigRational>], ncols: usize) -> Kernel<BigRational> {
    if rows.len() * ncols <= SMALL_SYSTEM {
        return bareiss_kernel(&integer_rows(rows), ncols);
    }
    multimodular_kernel(rows, ncols).unwrap_or_else(|| bareiss_kernel(&integer_rows(rows), ncols))
}

/// Fraction-free elimination to echelon form, then back substitution for
/// the kernel vector with first free coordinate 1 and the others 0.
pub fn bareiss_kernel(int_rows: &[Vec<BigInt>], ncols: usize) -> Kernel<BigRational> {
    let mut m = int_rows.to_vec();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c..ncols {
                let v = &prow[c] * &row[j] - &f * &prow[j];
                row[j] = v / &prev;
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let Some(free) = (0..ncols).find(|c| !pivots.contains(c)) else {
        return Kernel { rank, vector: None };
    };
    let mut v = vec![BigRational::zero(); ncols];
    v[free] = BigRational::one();
    for i in (0..rank).rev() {
        let pc = pivots[i];
        let mut s = BigRational::from_integer(m[i][free].clone());
        for &pj in &pivots[i + 1..] {
            if !m[i][pj].is_zero() {
                s += BigRational::from_integer(m[i][pj].clone()) * &v[pj];
            }
        }
        v[pc] = -s / BigRational::from_integer(m[i][pc].clone());
    }
    Kernel { rank, vector: Some(v) }
}

/// Descending primes below 2³¹; products of residues fit in a u64.
fn lift_primes() -> impl Iterator<Item = u64> {
    (1u64 << 30..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn rref_mod(m: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = crate::field::powmod(m[r][c], p - 2, p);
        for x in m[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                let pj = pivot_row[j];
                if pj != 0 {
                    row[j] = (row[j] + (p - f) * pj % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// n/d with |n|, d ≤ √(m/2) and n ≡ a·d (mod m), if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn multimodular_kernel(rows: &[Vec<BigRational>], ncols: usize) -> Option<Kernel<BigRational>> {
    let int_rows = integer_rows(rows);
    let mut best_pivots: Option<Vec<usize>> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigRational>> = None;
    for p in lift_primes().take(MAX_PRIMES) {
        let pb = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = int_rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits"))
                    .collect()
            })
            .collect();
        let pivots = rref_mod(&mut m, ncols, p);
        if pivots.len() == ncols {
            // Full rank modulo p forces full rank over ℚ.
            return Some(Kernel { rank: ncols, vector: None });
        }
        let free = (0..ncols).find(|c| !pivots.contains(c)).expect("free column");
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[i][free]) % p;
        }
        let better = match &best_pivots {
            None => true,
            Some(b) => pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b),
        };
        let same = best_pivots.as_ref() == Some(&pivots);
        if better && !same {
            best_pivots = Some(pivots.clone());
            residues = v.iter().map(|&x| BigInt::from(x)).collect();
            modulus = pb;
            last = None;
        } else if same {
            let minv = BigInt::from(crate::field::powmod(
                (&modulus % &pb).to_u64().expect("fits"),
                p - 2,
                p,
            ));
            for (r, &x) in residues.iter_mut().zip(v.iter()) {
                let diff = (BigInt::from(x) - (&*r % &pb)).mod_floor(&pb);
                let t = (diff * &minv) % &pb;
                *r += &modulus * t;
            }
            modulus *= &pb;
        } else {
            continue;
        }
        let lifted: Option<Vec<BigRational>> = residues
            .iter()
            .map(|r| rational_reconstruct(r, &modulus))
            .collect();
        let Some(lifted) = lifted else {
            continue;
        };
        if last.as_ref() == Some(&lifted) && annihilates(&int_rows, &lifted) {
            let rank = best_pivots.as_ref().map_or(0, |b| b.len());
            return Some(Kernel { rank, vector: Some(lifted) });
        }
        last = Some(lifted);
    }
    None
}

fn annihilates(int_rows: &[Vec<BigInt>], v: &[BigRational]) -> bool {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let w: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    int_rows.iter().all(|row| {
        let mut s = BigInt::zero();
        for (a, b) in row.iter().zip(w.iter()) {
            if !a.is_zero() && !b.is_zero() {
                s += a * b;
            }
        }
        s.is_zero()
    })
}

/// Monic gcd mod p of two coefficient lists without trailing zeros.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().expect("nonzero"), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let c = mulmod(*a.last().expect("nonzero"), inv, p);
            let shift = a.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mulmod(c, bi, p)) % p;
            }
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    let inv = powmod(*a.last().expect("nonzero"), p - 2, p);
    a.iter().map(|&x| mulmod(x, inv, p)).collect()
}

/// Monic gcd over ℚ of two nonzero polynomials: monic gcds modulo primes
/// not dividing either leading coefficient, the least degree kept, lifted
/// by CRT and rational reconstruction and accepted once it divides both
/// inputs exactly. `None` if the prime budget runs out.
pub fn rational_poly_gcd(a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let ai = integer_rows(&[a.to_vec()]).pop().expect("one row");
    let bi = integer_rows(&[b.to_vec()]).pop().expect("one row");
    let (pa, pb) = (Poly::new(Rationals, a.to_vec()), Poly::new(Rationals, b.to_vec()));
    let mut best: Option<(usize, Vec<BigInt>, BigInt)> = None;
    let mut last: Option<Vec<BigRational>> = None;
    for p in lift_primes().take(MAX_PRIMES) {
        let pbig = BigInt::from(p);
        let reduce = |v: &[BigInt]| -> Vec<u64> { v.iter().map(|x| x.mod_floor(&pbig).to_u64().expect("residue")).collect() };
        let (ar, br) = (reduce(&ai), reduce(&bi));
        if ar.last() == Some(&0) || br.last() == Some(&0) {
            continue;
        }
        let g = gcd_mod(&ar, &br, p);
        if g.len() == 1 {
            return Some(vec![BigRational::one()]);
        }
        let deg = g.len() - 1;
        match &mut best {
            Some((d, _, _)) if deg > *d => continue,
            Some((d, res, m)) if deg == *d => {
                // x ≡ res (mod m), x ≡ g (mod p)
                let m_inv = powmod(m.mod_floor(&pbig).to_u64().expect("residue"), p - 2, p);
                for (r, &gi) in res.iter_mut().zip(&g) {
                    let rp = r.mod_floor(&pbig).to_u64().expect("residue");
                    let t = mulmod((gi + p - rp) % p, m_inv, p);
                    *r += &*m * t;
                }
                *m *= &pbig;
            }
            _ => {
                best = Some((deg, g.iter().map(|&x| BigInt::from(x)).collect(), pbig));
                last = None;
                continue;
            }
        }
        let (_, res, m) = best.as_ref().expect("set above");
        let cand: Option<Vec<BigRational>> = res.iter().map(|r| rational_reconstruct(r, m)).collect();
        let Some(cand) = cand else { continue };
        if last.as_ref() == Some(&cand) {
            let gp = Poly::new(Rationals, cand.clone());
            if pa.div_rem(&gp).1.is_zero() && pb.div_rem(&gp).1.is_zero() {
                return Some(cand);
            }
        }
        last = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn random_rank_deficient(rng: &mut ChaCha8Rng, nrows: usize, ncols: usize, rank: usize) -> Vec<Vec<BigRational>> {
        let basis: Vec<Vec<i64>> = (0..rank)
            .map(|_| (0..ncols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        (0..nrows)
            .map(|_| {
                let coefs: Vec<i64> = (0..rank).map(|_| rng.gen_range(-5..=5)).collect();
                (0..ncols)
                    .map(|j| {
                        let s: i64 = coefs.iter().zip(&basis).map(|(c, b)| c * b[j]).sum();
                        BigRational::new(s.into(), rng.gen_range(1..4i64).into())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = gauss_kernel(&Rationals, &rows, 3);
        assert_eq!(k.rank, 1);
        assert_eq!(k.vector, Some(vec![q(-2), q(1), q(0)]));
    }

    #[test]
    fn bareiss_matches_gauss_jordan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..10 {
            let ncols = 3 + trial;
            let rows = random_rank_deficient(&mut rng, ncols + 2, ncols, ncols.saturating_sub(1 + trial % 3));
            assert_eq!(gauss_kernel(&Rationals, &rows, ncols), bareiss_kernel(&integer_rows(&rows), ncols));
        }
    }

    #[test]
    fn full_rank_has_no_kernel() {
        let rows = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(gauss_kernel(&Rationals, &rows, 2).vector, None);
    }

    #[test]
    fn multimodular_matches_exact_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..6 {
            let ncols = 30 + trial * 5;
            let rows = random_rank_deficient(&mut rng, 2 * ncols + 10, ncols, ncols - 1 - trial);
            let exact = bareiss_kernel(&integer_rows(&rows), ncols);
            let lifted = multimodular_kernel(&rows, ncols).expect("lift settles");
            assert_eq!(exact, lifted, "trial {trial}");
        }
    }

    #[test]
    fn multimodular_detects_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rows = random_rank_deficient(&mut rng, 80, 40, 40);
        assert_eq!(multimodular_kernel(&rows, 40).unwrap().vector, None);
    }

    #[test]
    fn reconstruction_recovers_fraction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let target = BigRational::new((-37).into(), 113.into());
        let ext = BigInt::from(113).extended_gcd(&m);
        let a = (BigInt::from(-37) * ext.x).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(target));
    }

    #[test]
    fn prime_field_kernel() {
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 1]];
        let k = f.kernel(&rows, 3);
        let v = k.vector.unwrap();
        for row in &rows {
            let s = row.iter().zip(&v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            assert_eq!(s, 0);
        }
    }
    fn euclid_gcd(a: &Poly<Rationals>, b: &Poly<Rationals>) -> Poly<Rationals> {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = core::mem::replace(&mut b, r);
        }
        a
    }

    #[test]
    fn modular_gcd_matches_euclid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let mut rand_poly = |d: usize| {
                let c = (0..=d).map(|_| BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=6).into())).collect();
                Poly::new(Rationals, c)
            };
            let common = rand_poly(3);
            let (a, b) = (rand_poly(6).mul(&common), rand_poly(4).mul(&common));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let fast = Poly::new(Rationals, rational_poly_gcd(a.coeffs(), b.coeffs()).unwrap());
            assert_eq!(fast, euclid_gcd(&a, &b));
        }
    }

    #[test]
    fn modular_gcd_of_coprime_and_equal() {
        let a = Poly::from_i64s(Rationals, &[1, -3]);
        let b = Poly::from_i64s(Rationals, &[2, 0, 1]);
        assert_eq!(rational_poly_gcd(a.coeffs(), b.coeffs()).unwrap(), vec![q(1)]);
        let g = rational_poly_gcd(a.coeffs(), a.coeffs()).unwrap();
        assert_eq!(g, vec![BigRational::new((-1).into(), 3.into()), q(1)]);
    }}
