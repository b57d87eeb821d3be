//! Brute-force search for an element with no zero coordinate in the span of
//! h₁..h_m inside ∏ ℤ/d_iℤ.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInstance {
    pub moduli: Vec<u64>,
    pub generators: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSearch {
    /// r_i: additive order of the i-th coordinate of h_i.
    pub coordinate_orders: Vec<u64>,
    /// Σ 1/r_i < 1.
    pub hypothesis_met: bool,
    /// Coefficients x_i ≥ 1 and the element Σ x_i h_i.
    pub witness: Option<(Vec<u64>, Vec<u64>)>,
    pub searched: u64,
}

const SEARCH_CAP: u64 = 50_000_000;

impl GroupInstance {
    pub fn validate(&self) -> Result<()> {
        let m = self.moduli.len();
        if m == 0 || self.generators.len() != m {
            return Err(Error::InvalidInput("need one generator per cyclic factor".into()));
        }
        if self.moduli.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput("moduli must be at least 2".into()));
        }
        for h in &self.generators {
            if h.len() != m || h.iter().zip(&self.moduli).any(|(c, d)| c >= d) {
                return Err(Error::InvalidInput("generator coordinates out of range".into()));
            }
        }
        Ok(())
    }

    pub fn coordinate_orders(&self) -> Vec<u64> {
        (0..self.moduli.len())
            .map(|i| self.moduli[i] / self.generators[i][i].gcd(&self.moduli[i]))
            .collect()
    }

    /// Additive order of h_i in the whole group.
    fn generator_order(&self, i: usize) -> u64 {
        self.generators[i]
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// Σ 1/r_i < 1, decided exactly.
    pub fn hypothesis_met(&self) -> bool {
        let r = self.coordinate_orders();
        let l = r.iter().fold(1u128, |acc, &x| acc.lcm(&(x as u128)));
        r.iter().map(|&x| l / x as u128).sum::<u128>() < l
    }
}

/// Lexicographically first (x₁..x_m) with 1 ≤ x_i ≤ ord(h_i) such that
/// Σ x_i h_i has every coordinate nonzero.
pub fn group_search(inst: &GroupInstance) -> Result<GroupSearch> {
    inst.validate()?;
    let m = inst.moduli.len();
    let orders: Vec<u64> = (0..m).map(|i| inst.generator_order(i)).collect();
    let mut x = vec![1u64; m];
    let mut searched = 0;
    let witness = loop {
        searched += 1;
        if searched > SEARCH_CAP {
            return Err(Error::InvalidInput("search cap exceeded".into()));
        }
        let elem: Vec<u64> = (0..m)
            .map(|c| {
                let d = inst.moduli[c];
                (0..m).fold(0u64, |acc, i| (acc + x[i] % d * inst.generators[i][c]) % d)
            })
            .collect();
        if elem.iter().all(|&c| c != 0) {
            break Some((x, elem));
        }
        // odometer, last coordinate fastest
        let mut i = m;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if x[i] < orders[i] {
                x[i] += 1;
                break;
            }
            x[i] = 1;
            if i == 0 {
                i = usize::MAX;
                break;
            }
        }
        if i == usize::MAX {
            break None;
        }
    };
    Ok(GroupSearch { coordinate_orders: inst.coordinate_orders(), hypothesis_met: inst.hypothesis_met(), witness, searched })
}
