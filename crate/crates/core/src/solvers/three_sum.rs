use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Witness3;
use crate::instance::IntegerSet;

/// Integer types a 3SUM solver can run on. Sums of three values are compared
/// against zero without overflow.
pub trait SumValue: Clone + Ord + Debug {
    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn to_bigint(&self) -> BigInt;

    fn sum3_cmp_zero(a: &Self, b: &Self, c: &Self) -> Ordering;

    fn doubled_negation(&self) -> Option<Self>;
}

impl SumValue for i64 {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn sum3_cmp_zero(a: &Self, b: &Self, c: &Self) -> Ordering {
        (*a as i128 + *b as i128 + *c as i128).cmp(&0)
    }

    fn doubled_negation(&self) -> Option<Self> {
        self.checked_mul(-2)
    }
}

impl SumValue for i128 {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn sum3_cmp_zero(a: &Self, b: &Self, c: &Self) -> Ordering {
        match a.checked_add(*b).and_then(|s| s.checked_add(*c)) {
            Some(s) => s.cmp(&0),
            None => (BigInt::from(*a) + b + c).cmp(&BigInt::from(0)),
        }
    }

    fn doubled_negation(&self) -> Option<Self> {
        self.checked_mul(-2)
    }
}

impl SumValue for BigInt {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn sum3_cmp_zero(a: &Self, b: &Self, c: &Self) -> Ordering {
        // a + b + c vs 0  <=>  a + b vs -c, one allocation
        (a + b).cmp(&-c)
    }

    fn doubled_negation(&self) -> Option<Self> {
        Some(self * -2)
    }
}

/// Solutions that use a repeated value: `x, x, -2x` (which covers `0, 0, 0`).
/// Runs in `O(n log n)`.
pub fn repeated_value_3sum<T: SumValue>(values: &[T]) -> Option<Witness3> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let find = |target: &T, skip: [usize; 2]| -> Option<usize> {
        let start = order.partition_point(|&i| values[i] < *target);
        order[start..]
            .iter()
            .take_while(|&&i| values[i] == *target)
            .find(|i| !skip.contains(i))
            .copied()
    };
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        if values[i] != values[j] {
            continue;
        }
        if let Some(target) = values[i].doubled_negation() {
            if let Some(k) = find(&target, [i, j]) {
                return Witness3::new(i, j, k);
            }
        }
    }
    None
}

/// Three distinct indices whose values sum to zero, by sorting and a
/// two-pointer sweep: `O(n²)` comparisons after an `O(n log n)` sort.
/// Works on multisets; indices, not values, must be distinct.
pub fn three_sum_indexed<T: SumValue>(values: &[T]) -> Option<Witness3> {
    if let Some(w) = repeated_value_3sum(values) {
        return Some(w);
    }
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    for a in 0..n.saturating_sub(2) {
        let x = &values[order[a]];
        let (mut lo, mut hi) = (a + 1, n - 1);
        while lo < hi {
            match T::sum3_cmp_zero(x, &values[order[lo]], &values[order[hi]]) {
                Ordering::Equal => return Witness3::new(order[a], order[lo], order[hi]),
                Ordering::Less => lo += 1,
                Ordering::Greater => hi -= 1,
            }
        }
    }
    None
}

pub fn solve_3sum_quadratic(set: &IntegerSet) -> Option<Witness3> {
    three_sum_indexed(set.values())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(values: &[i64]) -> bool {
        let n = values.len();
        (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| values[i] + values[j] + values[k] == 0)))
    }

    #[test]
    fn small_examples() {
        let s = IntegerSet::new(vec![-5, 2, 3]).unwrap();
        assert_eq!(solve_3sum_quadratic(&s).unwrap().indices(), [0, 1, 2]);
        assert!(solve_3sum_quadratic(&IntegerSet::new(vec![1, 2, 4]).unwrap()).is_none());
    }

    #[test]
    fn repeated_values_need_distinct_indices() {
        assert!(three_sum_indexed(&[2i64, -4]).is_none());
        assert_eq!(three_sum_indexed(&[2i64, 7, -4, 2]).unwrap().indices(), [0, 2, 3]);
        assert_eq!(three_sum_indexed(&[0i64, 0, 0]).unwrap().indices(), [0, 1, 2]);
        assert!(three_sum_indexed(&[0i64, 0]).is_none());
        assert_eq!(repeated_value_3sum(&[3i64, 1, 3, -6]).unwrap().indices(), [0, 2, 3]);
    }

    #[test]
    fn big_integers_and_i64_agree() {
        let v = [i64::MAX, i64::MIN + 1, 0, 5, -5];
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(three_sum_indexed(&v).is_some(), three_sum_indexed(&big).is_some());
        assert!(three_sum_indexed(&[i64::MAX, i64::MAX, 1]).is_none());
    }

    #[test]
    fn agrees_with_triple_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(0..40);
            let values: Vec<i64> = (0..n).map(|_| rng.gen_range(-60..60)).collect();
            let got = three_sum_indexed(&values);
            assert_eq!(got.is_some(), brute(&values), "{values:?}");
            if let Some(w) = got {
                let [i, j, k] = w.indices();
                assert_eq!(values[i] + values[j] + values[k], 0);
            }
        }
    }
}
