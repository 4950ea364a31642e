use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::z3::Z3Vector;

/// Whether `idx` are six distinct indices whose vectors sum to zero.
pub fn verify_6sum(elements: &[Z3Vector], idx: &[usize; 6]) -> bool {
    let mut sorted = *idx;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[5] >= elements.len() {
        return false;
    }
    let mut sum = Z3Vector::zero(elements[0].len());
    for &i in idx {
        sum.add_assign(&elements[i]);
    }
    sum.is_zero()
}

/// Six distinct indices summing to the zero vector over Z₃ᵗ, by meet in the
/// middle: every index triple is filed under its sum, then each triple looks
/// up a disjoint partner filed under its negation. `O(n³)` time and space.
pub fn solve_6sum_z3(elements: &[Z3Vector]) -> Option<[usize; 6]> {
    let n = elements.len();
    if n < 6 {
        return None;
    }
    let mut table: HashMap<Z3Vector, Vec<[u32; 3]>> = HashMap::new();
    for_each_triple(elements, |t, sum| {
        table.entry(sum).or_default().push(t);
        ControlFlow::Continue(())
    });
    let mut found = None;
    for_each_triple(elements, |t, sum| {
        let Some(partners) = table.get(&-&sum) else {
            return ControlFlow::Continue(());
        };
        match partners.iter().find(|p| p.iter().all(|x| !t.contains(x))) {
            Some(p) => {
                let mut out = [t[0], t[1], t[2], p[0], p[1], p[2]].map(|x| x as usize);
                out.sort_unstable();
                found = Some(out);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    found
}

/// Visit index triples `i < j < k` in lexicographic order with their sums.
fn for_each_triple(elements: &[Z3Vector], mut visit: impl FnMut([u32; 3], Z3Vector) -> ControlFlow<()>) {
    let n = elements.len();
    for i in 0..n {
        for j in i + 1..n {
            let ij = &elements[i] + &elements[j];
            for k in j + 1..n {
                if visit([i as u32, j as u32, k as u32], &ij + &elements[k]).is_break() {
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(digits: &[u8]) -> Vec<Z3Vector> {
        digits.iter().map(|&d| Z3Vector::from_digits(&[d]).unwrap()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(solve_6sum_z3(&set(&[1, 1, 1, 2, 2, 2])), Some([0, 1, 2, 3, 4, 5]));
        assert_eq!(solve_6sum_z3(&set(&[1, 1, 1, 1, 1, 2])), None);
        assert_eq!(solve_6sum_z3(&set(&[0, 0, 0, 0, 0])), None);
    }

    #[test]
    fn agrees_with_exhaustive_subsets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(6..11);
            let t = rng.gen_range(1..4);
            let els: Vec<Z3Vector> = (0..n)
                .map(|_| Z3Vector::from_digits(&(0..t).map(|_| rng.gen_range(0..3)).collect::<Vec<u8>>()).unwrap())
                .collect();
            let mut exists = false;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() == 6 {
                    let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    exists |= verify_6sum(&els, &idx.try_into().unwrap());
                }
            }
            let got = solve_6sum_z3(&els);
            assert_eq!(got.is_some(), exists);
            if let Some(w) = got {
                assert!(verify_6sum(&els, &w));
            }
        }
    }
}
