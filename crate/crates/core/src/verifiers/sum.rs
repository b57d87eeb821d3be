//! −ln(1 − t) ≥ (1 − 1/k)·Σ_{i≥0} t^{kⁱ} on sampled t.

use alloc::vec::Vec;

use super::dd::Dd;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SumSample {
    pub t: Dd,
    pub lhs: Dd,
    pub rhs: Dd,
    pub margin: Dd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumReport {
    pub k: u64,
    pub samples: Vec<SumSample>,
    /// Indices of samples with negative margin.
    pub violations: Vec<usize>,
    pub min_margin: Option<Dd>,
}

const TAIL: f64 = 1e-18;

pub fn check_sum_inequality(k: u64, ts: &[Dd]) -> Result<SumReport> {
    if k < 2 {
        return Err(Error::InvalidInput("base must be at least 2".into()));
    }
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        if !(t.hi > 0.0 && t < Dd::ONE) {
            return Err(Error::InvalidInput("t must lie in (0, 1)".into()));
        }
        let lhs = -(Dd::ONE - t).ln();
        let mut sum = Dd::ZERO;
        let mut term = t;
        while term.hi >= TAIL {
            sum = sum + term;
            term = term.powu(k);
        }
        let rhs = sum * (Dd::ONE - Dd::ONE / Dd::new(k as f64));
        samples.push(SumSample { t, lhs, rhs, margin: lhs - rhs });
    }
    let violations = samples.iter().enumerate().filter(|(_, s)| s.margin.hi < 0.0).map(|(i, _)| i).collect();
    let min_margin = samples.iter().map(|s| s.margin).fold(None, |m: Option<Dd>, x| match m {
        Some(m) if m < x => Some(m),
        _ => Some(x),
    });
    Ok(SumReport { k, samples, violations, min_margin })
}

/// i/(n+1) for i = 1..=n.
pub fn equispaced(n: usize) -> Vec<Dd> {
    (1..=n).map(|i| Dd::new(i as f64) / Dd::new((n + 1) as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_with_base_two() {
        let r = check_sum_inequality(2, &[Dd::new(0.5)]).unwrap();
        let s = &r.samples[0];
        assert!((s.lhs.to_f64() - core::f64::consts::LN_2).abs() < 1e-15);
        assert!((s.rhs.to_f64() - 0.408_2).abs() < 1e-4);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn small_t_margin_is_t_over_k() {
        for k in [2u64, 3, 7] {
            let t = 1e-6;
            let r = check_sum_inequality(k, &[Dd::new(t)]).unwrap();
            let m = r.samples[0].margin.to_f64();
            assert!((m - t / k as f64).abs() < 1e-11, "k={k} m={m}");
        }
    }

    #[test]
    fn sweeps_hold() {
        for k in [2u64, 3, 5, 10] {
            let r = check_sum_inequality(k, &equispaced(200)).unwrap();
            assert_eq!(r.samples.len(), 200);
            assert!(r.violations.is_empty(), "k={k}");
            assert!(r.min_margin.unwrap().hi > 0.0);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(check_sum_inequality(2, &[Dd::new(1.0)]).is_err());
        assert!(check_sum_inequality(1, &[Dd::new(0.5)]).is_err());
    }
}
