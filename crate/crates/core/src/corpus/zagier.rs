//! a(n) = ν₃(Σ C(2j, j)), its companion identity, the 3×3 system satisfied
//! by (a(n), a(3n), a(3n+1)) and the scalar relation of order 4.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{Field, Rationals};
use crate::mahler::{MahlerEquation, Verification};
use crate::poly::Poly;
use crate::series::Series;

/// Upper limit of the partial sum defining a(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZagierConvention {
    /// Σ_{j=0}^{n}
    SumToN,
    /// Σ_{j=0}^{n−1}; a(0) = 0 for the empty sum.
    SumToNMinus1,
}

impl ZagierConvention {
    pub const ALL: [ZagierConvention; 2] = [ZagierConvention::SumToN, ZagierConvention::SumToNMinus1];

    pub fn name(self) -> &'static str {
        match self {
            ZagierConvention::SumToN => "n",
            ZagierConvention::SumToNMinus1 => "n-1",
        }
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u32) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = (&m / &p, &m % &p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// C(2n, n) for n = 0..count.
pub fn central_binomials(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut c = BigInt::one();
    for n in 0..count {
        out.push(c.clone());
        // C(2n+2, n+1) = C(2n, n)·2(2n+1)/(n+1)
        c = c * BigInt::from(2 * (2 * n as u64 + 1)) / BigInt::from(n as u64 + 1);
    }
    out
}

/// a(0..=n_max).
pub fn zagier_sequence(n_max: usize, conv: ZagierConvention) -> Vec<u32> {
    let cb = central_binomials(n_max + 1);
    let mut out = Vec::with_capacity(n_max + 1);
    let mut partial = BigInt::zero();
    for n in 0..=n_max {
        let before = partial.clone();
        partial += &cb[n];
        let s = match conv {
            ZagierConvention::SumToN => &partial,
            ZagierConvention::SumToNMinus1 => &before,
        };
        out.push(valuation(s, 3).unwrap_or(0));
    }
    out
}

/// ν₃(n²·C(2n, n)) for n = 1..=n_max; index 0 is `None`.
pub fn zagier_rhs(n_max: usize) -> Vec<Option<u32>> {
    let cb = central_binomials(n_max + 1);
    (0..=n_max)
        .map(|n| {
            if n == 0 {
                None
            } else {
                valuation(&(BigInt::from(n as u64 * n as u64) * &cb[n]), 3)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub convention: ZagierConvention,
    pub n_max: usize,
    pub mismatch_count: usize,
    /// First few n in 1..=n_max where a(n) ≠ ν₃(n²C(2n,n)), with both sides.
    pub mismatches: Vec<(usize, u32, u32)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.mismatch_count == 0
    }
}

pub fn zagier_identity_check(n_max: usize, conv: ZagierConvention) -> IdentityReport {
    let lhs = zagier_sequence(n_max, conv);
    let rhs = zagier_rhs(n_max);
    let mut mismatches = Vec::new();
    let mut mismatch_count = 0;
    for n in 1..=n_max {
        let r = rhs[n].expect("n ≥ 1");
        if lhs[n] != r {
            mismatch_count += 1;
            if mismatches.len() < 16 {
                mismatches.push((n, lhs[n], r));
            }
        }
    }
    IdentityReport { convention: conv, n_max, mismatch_count, mismatches }
}

fn q(c: &[i64]) -> Poly<Rationals> {
    Poly::from_i64s(Rationals, c)
}

fn sparse(terms: &[(usize, i64)]) -> Poly<Rationals> {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut c = vec![0i64; deg + 1];
    for &(e, v) in terms {
        c[e] += v;
    }
    q(&c)
}

/// a₀ + a₁F(z) + a₂F(z³) + a₃F(z⁹) + a₄F(z²⁷) = 0 with the printed
/// polynomials; `a4_top` is the top exponent of a₄ (48 as printed).
pub fn zagier_scalar_relation_with(a4_top: usize) -> MahlerEquation<Rationals> {
    let a0 = sparse(&[
        (1, 1), (2, 2), (3, -1), (4, 1), (5, 3), (7, -1), (8, 3), (9, 1), (11, -1), (12, 3),
        (14, -2), (15, -1), (16, 2), (17, -2), (18, -2), (21, 2),
    ]);
    let a1 = sparse(&[(0, -1), (4, -1), (8, -1), (9, 1), (13, 1), (17, 1)]);
    let mut t2: Vec<(usize, i64)> = (0..9).map(|e| (e, 1)).collect();
    t2.extend((13..22).map(|e| (e, -1)));
    let a2 = sparse(&t2);
    let mut t3: Vec<(usize, i64)> = [3, 6, 7, 9, 10, 11, 13, 14, 17].iter().map(|&e| (e, -1)).collect();
    t3.extend([16, 19, 20, 22, 23, 24, 26, 27, 30].iter().map(|&e| (e, 1)));
    let a3 = sparse(&t3);
    let a4 = sparse(&[(21, 1), (a4_top, -1)]);
    MahlerEquation::new(3, vec![a1, a2, a3, a4], a0).expect("valid equation")
}

pub fn zagier_scalar_relation() -> MahlerEquation<Rationals> {
    zagier_scalar_relation_with(48)
}

pub fn zagier_series(n: usize, conv: ZagierConvention) -> Series<Rationals> {
    let a = zagier_sequence(n.saturating_sub(1), conv);
    Series::new(Rationals, a.iter().map(|&v| Rationals.from_i64(v as i64)).collect())
}

/// Which of the three rows of the system hold, and the row-2 variant with
/// the (2,2) entry z³(1+z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemRows {
    pub printed: [Verification; 3],
    pub row2_corrected: Verification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionCheck {
    pub convention: ZagierConvention,
    pub scalar: Verification,
    pub system: SystemRows,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZagierSystemReport {
    pub precision: usize,
    pub conventions: Vec<ConventionCheck>,
    /// The convention under which the scalar relation holds, if any.
    pub scalar_convention: Option<ZagierConvention>,
    /// Scalar relation with a₄ = z²¹ − z⁴⁷ under `scalar_convention`.
    pub corrupted_a4: Option<Verification>,
}

type IPoly = Vec<i64>;

fn imul(a: &[i64], b: &[i64]) -> IPoly {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// p·f truncated to n terms, accumulated into acc.
fn add_poly_times(acc: &mut [i64], p: &[i64], f: &[i64], stride: usize) {
    let n = acc.len();
    for (e, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut idx = e;
        let mut m = 0;
        while idx < n && m < f.len() {
            acc[idx] += c * f[m];
            m += 1;
            idx += stride;
        }
    }
}

fn first_nonzero(r: &[i64]) -> Verification {
    match r.iter().position(|&v| v != 0) {
        None => Verification::HoldsTo(r.len()),
        Some(i) => Verification::FailsAt(i),
    }
}

/// D·f_i(z³) − (z − 1)·Σⱼ Nᵢⱼ·f_j − Bᵢ with D = z³(1+z+z²)(z−1).
fn row_check(n: usize, fs: [&[i64]; 3], i: usize, row: [&[i64]; 3], b: &[i64]) -> Verification {
    let d = imul(&[0, 0, 0, 1, 1, 1], &[-1, 1]);
    let mut r = vec![0i64; n];
    add_poly_times(&mut r, &d, fs[i], 3);
    for j in 0..3 {
        // subtracts (z − 1)·N_ij f_j
        let p: IPoly = imul(&[1, -1], row[j]);
        add_poly_times(&mut r, &p, fs[j], 1);
    }
    for (e, &c) in b.iter().enumerate() {
        if e < n {
            r[e] -= c;
        }
    }
    first_nonzero(&r)
}

fn system_rows(a: &[u32], n: usize) -> SystemRows {
    let f1: Vec<i64> = a[..n].iter().map(|&v| v as i64).collect();
    let f2: Vec<i64> = (0..n).map(|m| a[3 * m] as i64).collect();
    let f3: Vec<i64> = (0..n).map(|m| a[3 * m + 1] as i64).collect();
    let fs = [&f1[..], &f2[..], &f3[..]];
    let zero: &[i64] = &[0];
    let b1 = imul(&[0, 1], &[-1, 0, 2]);
    let row1 = [&[0, 1, 1, 1][..], &[0, 0, -1][..], &[0, -1][..]];
    let row2 = [zero, &[0, 0, 1, 1][..], &[0, 0, 0, 0, -1][..]];
    let row2c = [zero, &[0, 0, 0, 1, 1][..], &[0, 0, 0, 0, -1][..]];
    let row3 = [zero, &[0, 0, -1][..], &[0, 0, 1, 1][..]];
    SystemRows {
        printed: [
            row_check(n, fs, 0, row1, &b1),
            row_check(n, fs, 1, row2, &[0, 0, 0, 0, -1]),
            row_check(n, fs, 2, row3, &[0, 0, 1, 1]),
        ],
        row2_corrected: row_check(n, fs, 1, row2c, &[0, 0, 0, 0, -1]),
    }
}

pub fn zagier_system_check(precision: usize) -> Result<ZagierSystemReport> {
    if precision < 300 {
        return Err(crate::error::Error::InsufficientPrecision { needed: 300, given: precision });
    }
    let mut conventions = Vec::new();
    for conv in ZagierConvention::ALL {
        let a = zagier_sequence(3 * precision + 2, conv);
        let f = Series::new(Rationals, a[..precision].iter().map(|&v| Rationals.from_i64(v as i64)).collect());
        let scalar = zagier_scalar_relation().verify(&f)?;
        conventions.push(ConventionCheck { convention: conv, scalar, system: system_rows(&a, precision) });
    }
    let scalar_convention = conventions.iter().find(|c| c.scalar.holds()).map(|c| c.convention);
    let corrupted_a4 = match scalar_convention {
        Some(conv) => Some(zagier_scalar_relation_with(47).verify(&zagier_series(precision, conv))?),
        None => None,
    };
    Ok(ZagierSystemReport { precision, conventions, scalar_convention, corrupted_a4 })
}
