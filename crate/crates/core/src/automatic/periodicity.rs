use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::dfao::{digits_msd, Dfao};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodicityVerdict {
    /// f(n) = f(n + period) for every n ≥ preperiod, proved by an empty
    /// product automaton.
    Periodic { preperiod: u64, period: u64 },
    /// No (period, preperiod) within the bounds holds.
    AperiodicUpTo { max_period: u64, max_preperiod: u64 },
}

/// Smallest period m ≤ `max_period` for which some preperiod t ≤
/// `max_preperiod` works, with the least such t. Candidates come from the
/// first max_preperiod + 128·max_period terms; each is then proved or
/// refuted on the automaton itself.
pub fn eventual_periodicity(dfao: &Dfao, max_period: u64, max_preperiod: u64) -> PeriodicityVerdict {
    let a = dfao.zero_stable();
    let data_len = max_preperiod + 128 * max_period;
    let data = a.terms(data_len as usize);
    for m in 1..=max_period {
        let last_mismatch = (0..(data_len - m) as usize).rev().find(|&n| data[n] != data[n + m as usize]);
        let mut t = last_mismatch.map_or(0, |n| n as u64 + 1);
        while t <= max_preperiod {
            match mismatch_at_or_after(&a, m, t) {
                None => return PeriodicityVerdict::Periodic { preperiod: t, period: m },
                Some(n) => t = n + 1,
            }
        }
    }
    PeriodicityVerdict::AperiodicUpTo { max_period, max_preperiod }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct State {
    qa: usize,
    qb: usize,
    /// Carry that the digits still to be read must produce.
    carry: u8,
    /// Low digits read so far; 0 while still in the high part.
    phase: usize,
    high_nonzero: bool,
}

/// Some n ≥ t with f(n) ≠ f(n + m), or `None` if there is none. Words are
/// read msd-first with n padded by leading zeros; the last R digits carry
/// the digits of m and everything below k^R is checked directly.
fn mismatch_at_or_after(a: &Dfao, m: u64, t: u64) -> Option<u64> {
    let k = a.base();
    let r = digits_msd(m, k).len().max(digits_msd(t, k).len()).max(1);
    let limit = (k as u128).pow(r as u32);
    for n in t as u128..limit {
        let n = n as u64;
        if a.eval(n) != a.eval(n + m) {
            return Some(n);
        }
    }
    let mut m_digits = digits_msd(m, k);
    while m_digits.len() < r {
        m_digits.insert(0, 0);
    }
    // Search for a word with a nonzero high part, i.e. n ≥ k^R.
    let start = State { qa: a.initial(), qb: a.initial(), carry: 0, phase: 0, high_nonzero: false };
    let mut parent: BTreeMap<State, Option<(State, usize)>> = BTreeMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if s.phase == r {
            if s.carry == 0 && s.high_nonzero && a.outputs()[s.qa] != a.outputs()[s.qb] {
                return Some(word_value(&parent, s, k));
            }
            continue;
        }
        let mut moves = Vec::new();
        if s.phase == 0 {
            moves.push((0usize, 0usize));
        }
        moves.push((s.phase + 1, m_digits[s.phase]));
        for (phase, y) in moves {
            for x in 0..k {
                for carry_in in 0..=1u8 {
                    let sum = x + y + carry_in as usize;
                    if (sum / k) as u8 != s.carry {
                        continue;
                    }
                    let next = State {
                        qa: a.step(s.qa, x),
                        qb: a.step(s.qb, sum % k),
                        carry: carry_in,
                        phase,
                        high_nonzero: s.high_nonzero || (s.phase == 0 && phase == 0 && x != 0),
                    };
                    if !parent.contains_key(&next) {
                        parent.insert(next, Some((s, x)));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

fn word_value(parent: &BTreeMap<State, Option<(State, usize)>>, mut s: State, k: usize) -> u64 {
    let mut digits = Vec::new();
    while let Some(Some((prev, x))) = parent.get(&s) {
        digits.push(*x);
        s = *prev;
    }
    digits.iter().rev().fold(0u64, |acc, &d| acc.saturating_mul(k as u64).saturating_add(d as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn thue_morse() -> Dfao {
        Dfao::new(2, 0, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).unwrap()
    }

    fn pow3_mod5() -> Dfao {
        // state = 3^{digit count} mod 5
        let vals = [1u64, 3, 4, 2];
        let transitions = (0..4).map(|i| vec![(i + 1) % 4, (i + 1) % 4]).collect();
        Dfao::new(2, 0, transitions, vals.to_vec()).unwrap()
    }

    #[test]
    fn constant_is_periodic() {
        let d = Dfao::new(3, 0, vec![vec![0, 0, 0]], vec![4]).unwrap();
        assert_eq!(eventual_periodicity(&d, 8, 8), PeriodicityVerdict::Periodic { preperiod: 0, period: 1 });
    }

    #[test]
    fn thue_morse_aperiodic() {
        assert_eq!(
            eventual_periodicity(&thue_morse(), 64, 1024),
            PeriodicityVerdict::AperiodicUpTo { max_period: 64, max_preperiod: 1024 }
        );
    }

    #[test]
    fn digit_count_powers_are_not_periodic() {
        // 3^{bit length of n} mod 5 changes at every power of two
        assert!(matches!(eventual_periodicity(&pow3_mod5(), 16, 256), PeriodicityVerdict::AperiodicUpTo { .. }));
    }

    #[test]
    fn ultimately_periodic_with_preperiod() {
        // n ↦ [n ≥ 5] + 2·[n odd]: preperiod 5, period 2, in base 2
        let vals: Vec<u64> = (0..64u64).map(|n| (n >= 5) as u64 + 2 * (n % 2)).collect();
        let d = automaton_for_prefix_then_parity(&vals);
        assert_eq!(eventual_periodicity(&d, 8, 64), PeriodicityVerdict::Periodic { preperiod: 5, period: 2 });
    }

    #[test]
    fn witness_search_finds_late_mismatch() {
        // Thue–Morse agrees with its shift by 3 at n = 0..=0 only sporadically;
        // the exact check must refute every candidate it is handed.
        let d = thue_morse();
        assert!(mismatch_at_or_after(&d, 1, 5000).unwrap() >= 5000);
        let powers = pow3_mod5();
        assert!(mismatch_at_or_after(&powers, 4, 1 << 20).is_some());
    }

    /// Base-2 DFAO with states for each n < 8 plus two absorbing parity
    /// states for longer inputs.
    fn automaton_for_prefix_then_parity(vals: &[u64]) -> Dfao {
        // states 0..8 mean "value so far is n < 8"; 8 and 9 are n ≥ 8 even/odd
        let mut transitions = Vec::new();
        let mut outputs = Vec::new();
        for n in 0..8usize {
            let t: Vec<usize> = (0..2).map(|b| if 2 * n + b < 8 { 2 * n + b } else { 8 + b }).collect();
            transitions.push(t);
            outputs.push(vals[n]);
        }
        transitions.push(vec![8, 9]);
        outputs.push(vals[8]);
        transitions.push(vec![8, 9]);
        outputs.push(vals[9]);
        Dfao::new(2, 0, transitions, outputs).unwrap()
    }
}
