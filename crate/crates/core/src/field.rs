//! Exact coefficient fields: the rationals and prime fields of word size.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Outcome of a nullspace computation: the rank and, when the kernel is
/// nontrivial, the RREF kernel vector whose first free coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel<E> {
    pub rank: usize,
    pub vector: Option<Vec<E>>,
}

pub trait Field: Clone + Debug + PartialEq + Eq {
    type Elem: Clone + Debug + PartialEq + Eq + Ord;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    /// Short tag used by text formats: `Q` or `F <p>`.
    fn describe(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Rank and canonical kernel vector of the matrix given by `rows`.
    fn kernel(&self, rows: &[Vec<Self::Elem>], ncols: usize) -> Kernel<Self::Elem> {
        linalg::gauss_kernel(self, rows, ncols)
    }

    /// First n coefficients of the product of two coefficient lists.
    fn convolve(&self, a: &[Self::Elem], b: &[Self::Elem], n: usize) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                if !self.is_zero(y) {
                    out[i + j] = self.add(&out[i + j], &self.mul(x, y));
                }
            }
        }
        out
    }

    /// Monic gcd of two nonzero coefficient lists by a field-specific
    /// route, or `None` to fall back to Euclid.
    fn poly_gcd(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Inverse of a power series to the same precision; `None` if a(0) = 0.
    fn invert_series(&self, a: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let n = a.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let c0 = self.inv(&a[0])?;
        let mut g = Vec::with_capacity(n);
        g.push(c0.clone());
        let support: Vec<usize> = (1..n).filter(|&j| !self.is_zero(&a[j])).collect();
        for m in 1..n {
            let mut s = self.zero();
            for &j in support.iter().take_while(|&&j| j <= m) {
                s = self.add(&s, &self.mul(&a[j], &g[m - j]));
            }
            g.push(self.neg(&self.mul(&s, &c0)));
        }
        Some(g)
    }
}

/// Integer numerators over a common denominator.
fn clear_denominators(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let d = a.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let v = a.iter().map(|r| r.numer() * (&d / r.denom())).collect();
    (v, d)
}

/// The field ℚ with elements kept in lowest terms, denominator positive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            format!("{}", a.numer())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("bad rational `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn describe(&self) -> String {
        String::from("Q")
    }
    fn kernel(&self, rows: &[Vec<BigRational>], ncols: usize) -> Kernel<BigRational> {
        linalg::rational_kernel(rows, ncols)
    }

    fn poly_gcd(&self, a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
        linalg::rational_poly_gcd(a, b)
    }

    fn convolve(&self, a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
        let (ai, da) = clear_denominators(&a[..a.len().min(n)]);
        let (bi, db) = clear_denominators(&b[..b.len().min(n)]);
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in ai.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bi.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        out.into_iter().map(|c| BigRational::new(c, d.clone())).collect()
    }

    /// With a = A/d over ℤ, 1/A has coefficients hₘ/A₀^{m+1} where
    /// h₀ = 1 and hₘ = −Σ_{i≥1} Aᵢ·A₀^{i−1}·h_{m−i}.
    fn invert_series(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = a.len();
        if n == 0 {
            return Some(Vec::new());
        }
        if a[0].is_zero() {
            return None;
        }
        let (ai, d) = clear_denominators(a);
        let a0 = ai[0].clone();
        let mut a0_pows = Vec::with_capacity(n + 1);
        a0_pows.push(BigInt::one());
        for i in 1..=n {
            let next = &a0_pows[i - 1] * &a0;
            a0_pows.push(next);
        }
        let c: Vec<(usize, BigInt)> = (1..n).filter(|&i| !ai[i].is_zero()).map(|i| (i, &ai[i] * &a0_pows[i - 1])).collect();
        let mut h: Vec<BigInt> = Vec::with_capacity(n);
        h.push(BigInt::one());
        for m in 1..n {
            let mut s = BigInt::zero();
            for (i, ci) in c.iter().take_while(|(i, _)| *i <= m) {
                s += ci * &h[m - i];
            }
            h.push(-s);
        }
        Some(h.into_iter().enumerate().map(|(m, hm)| BigRational::new(hm * &d, a0_pows[m + 1].clone())).collect())
    }
}

/// ℤ/pℤ for a prime p < 2⁶³, elements as least nonnegative residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    /// Image of a rational number, or `None` when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Option<u64> {
        let pb = BigInt::from(self.p);
        let n = residue(r.numer(), &pb);
        let d = residue(r.denom(), &pb);
        self.inv(&d).map(|di| self.mul(&n, &di))
    }

    /// Elements of the multiplicative group, 1..p.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }
}

fn residue(v: &BigInt, p: &BigInt) -> u64 {
    let r = v % p;
    let r = if r.is_negative() { r + p } else { r };
    u64::try_from(r).expect("residue below a 64-bit modulus")
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        residue(v, &BigInt::from(self.p))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(powmod(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format_elem(&self, a: &u64) -> String {
        format!("{a}")
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v: i128 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad residue `{s}`")))?;
        Ok(self.reduce_i128(v))
    }
    fn describe(&self) -> String {
        format!("F {}", self.p)
    }
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in ascending order up to `limit` inclusive.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| is_prime(n)).collect()
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
