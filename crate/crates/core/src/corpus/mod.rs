//! The concrete examples: the ν₃ central-binomial function and its
//! relations, Σx^{kⁿ}, geometric series, ν_p(C(2n,n)²) and Thue–Morse.

mod zagier;

pub use zagier::{
    central_binomials, valuation, zagier_identity_check, zagier_rhs, zagier_scalar_relation,
    zagier_scalar_relation_with, zagier_sequence, zagier_series, zagier_system_check, ConventionCheck,
    IdentityReport, SystemRows, ZagierConvention, ZagierSystemReport,
};

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::automatic::Dfao;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardSeries {
    /// Σ x^{kⁿ}
    PowerIndicator(u64),
    /// Σ cⁿxⁿ
    Geometric(BigRational),
    /// Σ ν_p(C(2n,n)²) xⁿ
    NuPCentralBinomialSquared(u32),
}

impl StandardSeries {
    /// `power-indicator`, `geometric` or `nu-p-central-binomial-squared`
    /// (alias `nu-p`) with one parameter.
    pub fn parse(name: &str, param: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(alloc::format!("bad parameter `{param}` for `{name}`"));
        match name {
            "power-indicator" => {
                let k: u64 = param.parse().map_err(|_| bad())?;
                if k < 2 {
                    return Err(bad());
                }
                Ok(StandardSeries::PowerIndicator(k))
            }
            "geometric" => Ok(StandardSeries::Geometric(Rationals.parse_elem(param)?)),
            "nu-p-central-binomial-squared" | "nu-p" => {
                let p: u32 = param.parse().map_err(|_| bad())?;
                if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                    return Err(bad());
                }
                Ok(StandardSeries::NuPCentralBinomialSquared(p))
            }
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            StandardSeries::PowerIndicator(k) => alloc::format!("power-indicator({k})"),
            StandardSeries::Geometric(c) => alloc::format!("geometric({c})"),
            StandardSeries::NuPCentralBinomialSquared(p) => alloc::format!("nu-p-central-binomial-squared({p})"),
        }
    }

    pub fn generate(&self, n: usize) -> Series<Rationals> {
        match self {
            StandardSeries::PowerIndicator(k) => {
                let mut c = vec![Rationals.zero(); n];
                let mut p: u64 = 1;
                while (p as u128) < n as u128 {
                    c[p as usize] = Rationals.one();
                    match p.checked_mul(*k) {
                        Some(q) => p = q,
                        None => break,
                    }
                }
                Series::new(Rationals, c)
            }
            StandardSeries::Geometric(r) => {
                let mut c = Vec::with_capacity(n);
                let mut x = BigRational::one();
                for _ in 0..n {
                    c.push(x.clone());
                    x *= r;
                }
                Series::new(Rationals, c)
            }
            StandardSeries::NuPCentralBinomialSquared(p) => {
                let c = central_binomials(n)
                    .iter()
                    .map(|b| BigRational::from_integer(BigInt::from(2 * valuation(b, *p).expect("nonzero"))))
                    .collect();
                Series::new(Rationals, c)
            }
        }
    }
}

pub fn standard_series(name: &str, param: &str, n: usize) -> Result<Series<Rationals>> {
    Ok(StandardSeries::parse(name, param)?.generate(n))
}

/// Two states, output = state, digit 0 loops and digit 1 swaps.
pub fn thue_morse_dfao() -> Dfao {
    Dfao::new(2, 0, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).expect("valid automaton")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automatic::{eventual_periodicity, PeriodicityVerdict};

    fn ints(s: &Series<Rationals>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn standard_examples() {
        assert_eq!(ints(&standard_series("power-indicator", "2", 10).unwrap()), vec![0, 1, 1, 0, 1, 0, 0, 0, 1, 0]);
        assert_eq!(ints(&standard_series("geometric", "3", 5).unwrap()), vec![1, 3, 9, 27, 81]);
        let nu = ints(&standard_series("nu-p", "3", 5).unwrap());
        assert_eq!(nu[1..], [0, 2, 0, 0]);
        assert_eq!(standard_series("nope", "1", 3), Err(Error::UnknownName("nope".into())));
        assert!(standard_series("nu-p", "4", 3).is_err());
        assert!(standard_series("power-indicator", "1", 3).is_err());
    }

    #[test]
    fn geometric_rational_ratio() {
        let s = standard_series("geometric", "-1/2", 4).unwrap();
        assert_eq!(s.coeff(3), &BigRational::new((-1).into(), 8.into()));
    }

    #[test]
    fn thue_morse() {
        let tm = thue_morse_dfao();
        let members: Vec<u64> = (0..14).filter(|&n| tm.eval(n) == 1).collect();
        assert_eq!(members, vec![1, 2, 4, 7, 8, 11, 13]);
        for n in 0..(1u64 << 16) {
            assert_eq!(tm.eval(n), (n.count_ones() % 2) as u64);
        }
        assert!(matches!(eventual_periodicity(&tm, 64, 1024), PeriodicityVerdict::AperiodicUpTo { .. }));
    }
}
