use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Deterministic finite automaton with output, reading base-k digits
/// most-significant first; n = 0 is the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: usize,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    outputs: Vec<u64>,
}

/// Base-k digits of n, most significant first; empty for n = 0.
pub fn digits_msd(mut n: u64, k: usize) -> Vec<usize> {
    let mut d = Vec::new();
    while n > 0 {
        d.push((n % k as u64) as usize);
        n /= k as u64;
    }
    d.reverse();
    d
}

impl Dfao {
    /// Validates the table and drops states unreachable from `initial`,
    /// renumbering the rest in breadth-first order.
    pub fn new(base: usize, initial: usize, transitions: Vec<Vec<usize>>, outputs: Vec<u64>) -> Result<Self> {
        let m = transitions.len();
        if base < 2 {
            return Err(Error::InvalidInput("base must be at least 2".into()));
        }
        if m == 0 || outputs.len() != m || initial >= m {
            return Err(Error::InvalidInput("state count mismatch".into()));
        }
        if transitions.iter().any(|row| row.len() != base || row.iter().any(|&t| t >= m)) {
            return Err(Error::InvalidInput("transition target out of range".into()));
        }
        Ok(Dfao { base, initial, transitions, outputs }.trimmed())
    }

    fn trimmed(self) -> Self {
        let mut index = vec![usize::MAX; self.transitions.len()];
        let mut order = vec![self.initial];
        index[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.transitions[order[i]] {
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        Dfao {
            base: self.base,
            initial: 0,
            transitions: order
                .iter()
                .map(|&q| self.transitions[q].iter().map(|&t| index[t]).collect())
                .collect(),
            outputs: order.iter().map(|&q| self.outputs[q]).collect(),
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn states(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn outputs(&self) -> &[u64] {
        &self.outputs
    }

    pub fn step(&self, q: usize, d: usize) -> usize {
        self.transitions[q][d]
    }

    pub fn run(&self, digits: &[usize]) -> usize {
        digits.iter().fold(self.initial, |q, &d| self.transitions[q][d])
    }

    pub fn eval(&self, n: u64) -> u64 {
        self.outputs[self.run(&digits_msd(n, self.base))]
    }

    pub fn terms(&self, count: usize) -> Vec<u64> {
        (0..count as u64).map(|n| self.eval(n)).collect()
    }

    /// Whether reading a leading 0 from the initial state changes nothing.
    pub fn is_zero_stable(&self) -> bool {
        self.transitions[self.initial][0] == self.initial
    }

    /// Equivalent automaton on which leading zeros are harmless: a fresh
    /// initial state with a 0-loop and the old initial state's moves.
    pub fn zero_stable(&self) -> Dfao {
        if self.is_zero_stable() {
            return self.clone();
        }
        let mut transitions = self.transitions.clone();
        let mut outputs = self.outputs.clone();
        let s = transitions.len();
        let mut row = self.transitions[self.initial].clone();
        row[0] = s;
        transitions.push(row);
        outputs.push(self.outputs[self.initial]);
        Dfao { base: self.base, initial: s, transitions, outputs }.trimmed()
    }

    /// Automaton for n ↦ f(kn + b).
    pub fn cartier_section(&self, b: usize) -> Dfao {
        assert!(b < self.base, "digit out of range");
        let mut outputs: Vec<u64> = (0..self.states()).map(|q| self.outputs[self.transitions[q][b]]).collect();
        let mut transitions = self.transitions.clone();
        let s = transitions.len();
        transitions.push(self.transitions[self.initial].clone());
        outputs.push(self.eval(b as u64));
        Dfao { base: self.base, initial: s, transitions, outputs }.trimmed()
    }

    /// Moore partition refinement; states are numbered canonically.
    pub fn minimize(&self) -> Dfao {
        let m = self.states();
        let mut class: Vec<usize> = {
            let mut ids = BTreeMap::new();
            self.outputs
                .iter()
                .map(|o| {
                    let n = ids.len();
                    *ids.entry(*o).or_insert(n)
                })
                .collect()
        };
        loop {
            let mut ids = BTreeMap::new();
            let next: Vec<usize> = (0..m)
                .map(|q| {
                    let sig: Vec<usize> = core::iter::once(class[q])
                        .chain(self.transitions[q].iter().map(|&t| class[t]))
                        .collect();
                    let n = ids.len();
                    *ids.entry(sig).or_insert(n)
                })
                .collect();
            let done = ids.len() == class.iter().collect::<alloc::collections::BTreeSet<_>>().len();
            class = next;
            if done {
                break;
            }
        }
        let count = class.iter().max().map_or(0, |c| c + 1);
        let mut transitions = vec![Vec::new(); count];
        let mut outputs = vec![0; count];
        for q in 0..m {
            let c = class[q];
            if transitions[c].is_empty() {
                transitions[c] = self.transitions[q].iter().map(|&t| class[t]).collect();
                outputs[c] = self.outputs[q];
            }
        }
        Dfao { base: self.base, initial: class[self.initial], transitions, outputs }.trimmed()
    }

    /// Whether both automata compute the same sequence, decided on the
    /// product automaton.
    pub fn equivalent(&self, other: &Dfao) -> bool {
        if self.base != other.base {
            return false;
        }
        let mut seen = BTreeMap::new();
        let mut queue = VecDeque::new();
        queue.push_back((self.initial, other.initial));
        seen.insert((self.initial, other.initial), ());
        while let Some((a, b)) = queue.pop_front() {
            if self.outputs[a] != other.outputs[b] {
                return false;
            }
            for d in 0..self.base {
                let next = (self.transitions[a][d], other.transitions[b][d]);
                if seen.insert(next, ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thue_morse() -> Dfao {
        Dfao::new(2, 0, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).unwrap()
    }

    #[test]
    fn evaluation() {
        let t = thue_morse();
        assert_eq!(t.eval(7), 1);
        assert_eq!(t.eval(0), 0);
        assert_eq!(t.eval(3), 0);
        assert_eq!(digits_msd(6, 2), vec![1, 1, 0]);
        assert!(digits_msd(0, 3).is_empty());
    }

    #[test]
    fn trimming_drops_unreachable_states() {
        let d = Dfao::new(2, 1, vec![vec![0, 0], vec![1, 1]], vec![5, 6]).unwrap();
        assert_eq!(d.states(), 1);
        assert_eq!(d.eval(9), 6);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(Dfao::new(2, 0, vec![vec![0, 2]], vec![0]).is_err());
        assert!(Dfao::new(2, 0, vec![vec![0]], vec![0]).is_err());
    }

    #[test]
    fn minimization_merges_equivalent_states() {
        let d = Dfao::new(2, 0, vec![vec![1, 2], vec![1, 2], vec![2, 1]], vec![0, 0, 1]).unwrap();
        let m = d.minimize();
        assert_eq!(m.states(), 2);
        assert!(m.equivalent(&d));
        assert!(m.equivalent(&thue_morse()));
    }

    #[test]
    fn cartier_sections_match_subsequences() {
        let d = Dfao::new(3, 0, vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 2, 1]], vec![0, 1, 2]).unwrap();
        for b in 0..3 {
            let s = d.cartier_section(b);
            for n in 0..500u64 {
                assert_eq!(s.eval(n), d.eval(3 * n + b as u64), "b={b} n={n}");
            }
        }
    }

    #[test]
    fn zero_stable_form_keeps_values() {
        let d = Dfao::new(2, 0, vec![vec![1, 1], vec![1, 0]], vec![3, 4]).unwrap();
        let z = d.zero_stable();
        assert!(z.is_zero_stable());
        for n in 0..300 {
            assert_eq!(z.eval(n), d.eval(n));
        }
    }
}
