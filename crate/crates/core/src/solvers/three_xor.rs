use std::collections::HashMap;

use super::Witness3;
use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest vector width the Walsh-Hadamard solver accepts by default.
pub const DEFAULT_WHT_WIDTH_CAP: usize = 24;

/// Solutions that use a repeated value: `x, x, 0`.
pub fn repeated_value_3xor(vectors: &[BitString]) -> Option<Witness3> {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]));
    let zero = order
        .iter()
        .copied()
        .filter(|&i| vectors[i].is_zero())
        .collect::<Vec<_>>();
    if zero.is_empty() {
        return None;
    }
    order
        .windows(2)
        .filter(|w| vectors[w[0]] == vectors[w[1]])
        .find_map(|w| {
            let k = zero.iter().find(|k| !w.contains(k))?;
            Witness3::new(w[0], w[1], *k)
        })
}

/// Three distinct indices whose vectors xor to zero, by hashing every value
/// and probing `v_i ⊕ v_j` for each pair. Works on multisets.
pub fn three_xor_indexed(vectors: &[BitString]) -> Option<Witness3> {
    if let Some(w) = repeated_value_3xor(vectors) {
        return Some(w);
    }
    let mut index: HashMap<&BitString, Vec<usize>> = HashMap::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        index.entry(v).or_default().push(i);
    }
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let z = &vectors[i] ^ &vectors[j];
            if let Some(ks) = index.get(&z) {
                if let Some(&k) = ks.iter().find(|&&k| k != i && k != j) {
                    return Witness3::new(i, j, k);
                }
            }
        }
    }
    None
}

pub fn solve_3xor_quadratic(vectors: &[BitString]) -> Option<Witness3> {
    three_xor_indexed(vectors)
}

/// Result of the transform-based solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhtOutcome {
    /// Ordered index triples `(i, j, k)`, pairwise distinct, with xor zero.
    pub distinct_ordered_triples: i128,
    pub witness: Option<Witness3>,
}

/// In-place unnormalized Walsh-Hadamard transform over `Z`.
pub fn walsh_hadamard(values: &mut [i64]) {
    let n = values.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Count solutions through the transform of the multiplicity function `f`:
/// ordered triples total `2^-ℓ Σ_χ f̂(χ)³`, of which `(3n - 2)·f(0)` repeat an
/// index. A witness is recovered by the pairwise scan only when the corrected
/// count is positive.
pub fn solve_3xor_wht(vectors: &[BitString], width: usize, cap: usize) -> Result<WhtOutcome> {
    if width > cap {
        return Err(Error::WidthCap { width, cap });
    }
    let mut f = vec![0i64; 1usize << width];
    for v in vectors {
        if v.width() != width {
            return Err(Error::WidthMismatch {
                expected: width,
                actual: v.width(),
            });
        }
        let x = v.to_u64().expect("width at most the cap") as usize;
        f[x] += 1;
    }
    let zeros = f[0] as i128;
    walsh_hadamard(&mut f);
    let cubes: i128 = f.iter().map(|&c| (c as i128).pow(3)).sum();
    let total = cubes >> width;
    let n = vectors.len() as i128;
    let distinct = total - (3 * n - 2) * zeros;
    let witness = if distinct > 0 { three_xor_indexed(vectors) } else { None };
    Ok(WhtOutcome {
        distinct_ordered_triples: distinct,
        witness,
    })
}
