//! Growth of ∏ P((tα)^{k^j})^{−1} as t → 1.

use alloc::vec::Vec;

use num_rational::BigRational;

use super::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::poly::Poly;

/// α = e^{2πi·num/den}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    pub num: u64,
    pub den: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthValue {
    /// |∏ P((tα)^{k^j})|^{−1}
    pub value: Dd,
    pub factors: usize,
    /// |last factor − 1|
    pub last_deviation: f64,
}

const STOP: f64 = 1e-15;
const VANISH: f64 = 1e-30;
const MAX_FACTORS: usize = 4096;

fn eval(coeffs: &[Dd], z: Cdd) -> Cdd {
    coeffs.iter().rev().fold(Cdd::real(Dd::ZERO), |acc, &c| acc.mul(z).add(Cdd::real(c)))
}

pub fn product_growth(p: &Poly<Rationals>, k: u64, t: Dd, alpha: Option<RootOfUnity>) -> Result<GrowthValue> {
    if k < 2 {
        return Err(Error::InvalidInput("base must be at least 2".into()));
    }
    if !(t.hi > 0.0 && t < Dd::ONE) {
        return Err(Error::InvalidInput("t must lie in (0, 1)".into()));
    }
    if p.coeff(0) != BigRational::from_integer(1.into()) {
        return Err(Error::ConstantTermNotOne);
    }
    if let Some(a) = alpha {
        if a.den == 0 {
            return Err(Error::InvalidInput("root of unity needs a positive order".into()));
        }
    }
    let coeffs: Vec<Dd> = p.coeffs().iter().map(Dd::from_rational).collect();
    let mut acc = Cdd::real(Dd::ONE);
    let mut tp = t;
    // α^{k^j} tracked as an exact fraction num_j/den
    let mut num = alpha.map_or(0, |a| a.num % a.den);
    for j in 0..MAX_FACTORS {
        let z = match alpha {
            None => Cdd::real(tp),
            Some(a) => {
                let w = Cdd::root_of_unity(num, a.den);
                Cdd { re: w.re * tp, im: w.im * tp }
            }
        };
        let factor = eval(&coeffs, z);
        if factor.abs().hi < VANISH {
            return Err(Error::FactorVanishes);
        }
        acc = acc.mul(factor);
        let dev = factor.add(Cdd::real(-Dd::ONE)).abs().hi;
        if dev < STOP {
            return Ok(GrowthValue { value: Dd::ONE / acc.abs(), factors: j + 1, last_deviation: dev });
        }
        tp = tp.powu(k);
        if let Some(a) = alpha {
            num = ((num as u128 * pow_mod(k, 1, a.den) as u128) % a.den as u128) as u64;
        }
    }
    Err(Error::PrecisionExhausted)
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m as u128;
    let mut base = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceProbe {
    /// least j with value(1 − 2^{−j})·(2^{−j})^A above the threshold
    pub j: u32,
    pub t: Dd,
    pub scaled: Dd,
    /// (j, t, scaled value) for every sampled point
    pub samples: Vec<(u32, Dd, Dd)>,
}

/// Samples t = 1 − 2^{−j} for j = 1..=j_max until ∏(1 − t^{k^i})^{−1}·(1 − t)^A
/// exceeds `threshold`.
pub fn divergence_probe(k: u64, a: u32, threshold: f64, j_max: u32) -> Result<Option<DivergenceProbe>> {
    let p = Poly::from_i64s(Rationals, &[1, -1]);
    let mut samples = Vec::new();
    for j in 1..=j_max.min(100) {
        let gap = Dd::ONE.ldexp(-(j as i32));
        let t = Dd::ONE - gap;
        let g = product_growth(&p, k, t, None)?;
        let scaled = g.value * gap.powu(a as u64);
        samples.push((j, t, scaled));
        if scaled.hi > threshold {
            return Ok(Some(DivergenceProbe { j, t, scaled, samples }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_x() -> Poly<Rationals> {
        Poly::from_i64s(Rationals, &[1, -1])
    }

    /// Plain f64 product, for comparison at moderate t.
    fn naive(t: f64, k: i32) -> f64 {
        let mut acc = 1.0;
        let mut z = t;
        for _ in 0..200 {
            acc *= 1.0 - z;
            z = num_traits::Float::powi(z, k);
        }
        1.0 / acc
    }

    #[test]
    fn half_value() {
        let g = product_growth(&one_minus_x(), 2, Dd::new(0.5), None).unwrap();
        assert!((g.value.to_f64() - 2.855_642_702_854_817).abs() < 1e-14);
        assert!((g.value.to_f64() - naive(0.5, 2)).abs() < 1e-13);
    }

    #[test]
    fn small_t_is_two_factor_dominated() {
        let g = product_growth(&one_minus_x(), 2, Dd::new(0.01), None).unwrap();
        assert!((g.value.to_f64() - 1.0102).abs() < 1e-3);
        assert!((g.value.to_f64() - 1.0 / (0.99 * 0.9999)).abs() < 1e-7);
    }

    #[test]
    fn truncation_is_stable() {
        for &(t, k) in &[(0.5, 2u64), (0.9, 2), (0.99, 3), (0.3, 5)] {
            let g = product_growth(&one_minus_x(), k, Dd::new(t), None).unwrap();
            // one more factor past the stopping point
            let tk = Dd::new(t).powu(k.pow(g.factors as u32));
            let extra = g.value / (Dd::ONE - tk);
            assert!((extra - g.value).abs().to_f64() < 1e-12, "t={t} k={k}");
        }
    }

    #[test]
    fn root_of_unity_twist() {
        // α = −1, k = 2: factors 1 + t, then 1 − t^{2^j}
        let g = product_growth(&one_minus_x(), 2, Dd::new(0.5), Some(RootOfUnity { num: 1, den: 2 })).unwrap();
        let plain = product_growth(&one_minus_x(), 2, Dd::new(0.5), None).unwrap();
        let expect = plain.value * Dd::new(0.5) / Dd::new(1.5);
        assert!((g.value - expect).abs().to_f64() < 1e-28);
        // α = i, k = 3: |1 − t·i^{3^j}| = √(1 + t^{2·3^j})
        let g = product_growth(&one_minus_x(), 3, Dd::new(0.5), Some(RootOfUnity { num: 1, den: 4 })).unwrap();
        let mut acc = 1.0f64;
        let mut z = 0.5f64;
        for _ in 0..10 {
            acc *= (1.0 + z * z).sqrt();
            z = z * z * z;
        }
        assert!((g.value.to_f64() - 1.0 / acc).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(product_growth(&one_minus_x(), 2, Dd::new(1.0), None).is_err());
        assert!(product_growth(&one_minus_x(), 2, Dd::new(0.0), None).is_err());
        let p = Poly::from_i64s(Rationals, &[2, -1]);
        assert_eq!(product_growth(&p, 2, Dd::new(0.5), None), Err(Error::ConstantTermNotOne));
        // 1 − 2x vanishes at t = 1/2
        let p = Poly::from_i64s(Rationals, &[1, -2]);
        assert_eq!(product_growth(&p, 2, Dd::new(0.5), None), Err(Error::FactorVanishes));
    }

    #[test]
    fn divergence_probe_crosses_threshold() {
        let probe = divergence_probe(2, 1, 1e3, 60).unwrap().expect("diverges");
        assert!(probe.scaled.to_f64() > 1e3);
        let (_, _, before) = probe.samples[probe.samples.len() - 2];
        assert!(before.to_f64() <= 1e3);
        // scaled values increase from j = 2 on
        for w in probe.samples[1..].windows(2) {
            assert!(w[1].2 > w[0].2);
        }
    }
}
