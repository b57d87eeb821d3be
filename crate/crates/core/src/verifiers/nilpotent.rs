//! Nilpotency of companion-shaped matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyCheck {
    pub nilpotent: bool,
    /// Decision from the first row alone.
    pub first_row_zero: bool,
    /// Decision from M^d = 0 computed exactly.
    pub power_zero: bool,
}

/// Row 0 is `first_row`, entry (i, i−1) is 1 for i ≥ 1, everything else 0.
pub fn companion_matrix<F: Field>(field: &F, first_row: &[F::Elem], d: usize) -> Vec<Vec<F::Elem>> {
    let mut m = vec![vec![field.zero(); d]; d];
    for (j, c) in first_row.iter().take(d).enumerate() {
        m[0][j] = c.clone();
    }
    for i in 1..d {
        m[i][i - 1] = field.one();
    }
    m
}

fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let d = a.len();
    let mut c = vec![vec![f.zero(); d]; d];
    for i in 0..d {
        for l in 0..d {
            if f.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..d {
                c[i][j] = f.add(&c[i][j], &f.mul(&a[i][l], &b[l][j]));
            }
        }
    }
    c
}

pub fn companion_nilpotent<F: Field>(field: &F, first_row: &[F::Elem], d: usize) -> Result<NilpotencyCheck> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if first_row.len() > d {
        return Err(Error::InvalidInput("first row longer than the dimension".into()));
    }
    let first_row_zero = first_row.iter().all(|c| field.is_zero(c));
    let m = companion_matrix(field, first_row, d);
    let mut p = m.clone();
    for _ in 1..d {
        p = mat_mul(field, &p, &m);
    }
    let power_zero = p.iter().flatten().all(|c| field.is_zero(c));
    if first_row_zero != power_zero {
        return Err(Error::InvalidInput("first-row test and matrix power disagree".into()));
    }
    Ok(NilpotencyCheck { nilpotent: power_zero, first_row_zero, power_zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn row(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn examples() {
        assert!(companion_nilpotent(&Rationals, &row(&[0, 0, 0]), 3).unwrap().nilpotent);
        assert!(!companion_nilpotent(&Rationals, &row(&[0, 1, 0]), 3).unwrap().nilpotent);
        assert!(!companion_nilpotent(&Rationals, &row(&[5]), 1).unwrap().nilpotent);
        assert!(companion_nilpotent(&Rationals, &row(&[]), 4).unwrap().nilpotent);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(companion_nilpotent(&Rationals, &row(&[1]), 0).is_err());
        assert!(companion_nilpotent(&Rationals, &row(&[1, 2]), 1).is_err());
    }

    proptest! {
        #[test]
        fn decisions_agree_over_f7(v in proptest::collection::vec(0i64..7, 1..7)) {
            let f = PrimeField::new(7).unwrap();
            let r: Vec<u64> = v.iter().map(|&x| f.from_i64(x)).collect();
            let c = companion_nilpotent(&f, &r, v.len()).unwrap();
            prop_assert_eq!(c.nilpotent, v.iter().all(|&x| x == 0));
        }

        #[test]
        fn decisions_agree_over_q(v in proptest::collection::vec(-3i64..4, 1..6)) {
            let c = companion_nilpotent(&Rationals, &row(&v), v.len()).unwrap();
            prop_assert_eq!(c.first_row_zero, c.power_zero);
        }
    }
}
