use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::dfao::Dfao;
use super::linrep::LinearRepresentation;
use crate::field::PrimeField;

/// Orbit of λ under right multiplication by the digit matrices. Each
/// distinct row vector becomes a state with output v·γ; states are numbered
/// in breadth-first order, digits ascending.
pub fn kernel_closure(rep: &LinearRepresentation<PrimeField>) -> Dfao {
    let k = rep.base();
    let mut index: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut states: Vec<Vec<u64>> = Vec::new();
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    index.insert(rep.row().to_vec(), 0);
    states.push(rep.row().to_vec());
    let mut i = 0;
    while i < states.len() {
        let v = states[i].clone();
        let mut row = Vec::with_capacity(k);
        for b in 0..k {
            let w = rep.row_times(&v, b);
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    index.insert(w.clone(), id);
                    states.push(w);
                    id
                }
            };
            row.push(id);
        }
        transitions.push(row);
        i += 1;
    }
    let outputs = states.iter().map(|v| rep.output(v)).collect();
    Dfao::new(k, 0, transitions, outputs).expect("closure table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use alloc::vec;

    #[test]
    fn thue_morse_affine_representation() {
        let f2 = PrimeField::new(2).unwrap();
        let rep = LinearRepresentation::new(
            f2,
            2,
            vec![0, 1],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]],
            vec![1, 0],
        )
        .unwrap();
        let d = kernel_closure(&rep);
        let fig = Dfao::new(2, 0, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).unwrap();
        assert_eq!(d, fig);
        for n in 0..1u64 << 16 {
            assert_eq!(d.eval(n), rep.eval(n));
        }
    }

    #[test]
    fn zero_representation() {
        let f = PrimeField::new(3).unwrap();
        let d = kernel_closure(&LinearRepresentation::zero(f, 2));
        assert_eq!(d.states(), 1);
        assert_eq!(d.outputs(), &[0]);
    }

    #[test]
    fn powers_of_three_by_length() {
        let f5 = PrimeField::new(5).unwrap();
        let rep = LinearRepresentation::new(f5, 2, vec![1], vec![vec![vec![3]], vec![vec![3]]], vec![1]).unwrap();
        let d = kernel_closure(&rep);
        assert_eq!(d.states(), 4);
        for n in 0..1u64 << 16 {
            let len = 64 - n.leading_zeros();
            assert_eq!(d.eval(n), f5.pow(&3, len as u64));
            assert_eq!(d.eval(n), rep.eval(n));
        }
    }
}
