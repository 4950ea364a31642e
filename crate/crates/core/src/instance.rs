//! Problem instances for every node of the reduction web.

use std::collections::HashSet;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::z3::Z3Vector;

/// Default exponent `c` in the magnitude bound `n^c` of 3SUM inputs.
pub const DEFAULT_MAGNITUDE_EXPONENT: u32 = 3;

/// `max(1, n^exponent)`, saturating.
pub fn magnitude_bound_for(n: usize, exponent: u32) -> u64 {
    (n as u64).saturating_pow(exponent).max(1)
}

/// A 3SUM instance: distinct integers bounded in magnitude by `n^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSet {
    values: Vec<i64>,
    magnitude_bound: u64,
}

impl IntegerSet {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        Self::with_exponent(values, DEFAULT_MAGNITUDE_EXPONENT)
    }

    pub fn with_exponent(values: Vec<i64>, exponent: u32) -> Result<Self> {
        let bound = magnitude_bound_for(values.len(), exponent);
        if let Some(v) = values.iter().find(|v| v.unsigned_abs() > bound) {
            return Err(Error::Invariant(format!("|{v}| exceeds magnitude bound {bound}")));
        }
        let mut seen = HashSet::with_capacity(values.len());
        if let Some(v) = values.iter().find(|&&v| !seen.insert(v)) {
            return Err(Error::Invariant(format!("value {v} repeated")));
        }
        Ok(IntegerSet {
            values,
            magnitude_bound: bound,
        })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn magnitude_bound(&self) -> u64 {
        self.magnitude_bound
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A 3XOR instance: distinct bit strings of a common width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVectorSet {
    vectors: Vec<BitString>,
    width: usize,
}

impl BitVectorSet {
    pub fn new(width: usize, vectors: Vec<BitString>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                actual: v.width(),
            });
        }
        let mut seen = HashSet::with_capacity(vectors.len());
        if let Some(v) = vectors.iter().find(|&v| !seen.insert(v)) {
            return Err(Error::Invariant(format!("vector {v} repeated")));
        }
        Ok(BitVectorSet { vectors, width })
    }

    pub fn vectors(&self) -> &[BitString] {
        &self.vectors
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// A convolution-3XOR array: `n = 2^s` cells, each a `width`-bit string or absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C3xorArray {
    entries: Vec<Option<BitString>>,
    width: usize,
}

impl C3xorArray {
    pub fn new(width: usize, entries: Vec<Option<BitString>>) -> Result<Self> {
        if !entries.len().is_power_of_two() {
            return Err(Error::Invariant(format!(
                "array length {} is not a power of two",
                entries.len()
            )));
        }
        if let Some(v) = entries.iter().flatten().find(|v| v.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                actual: v.width(),
            });
        }
        Ok(C3xorArray { entries, width })
    }

    pub fn entries(&self) -> &[Option<BitString>] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&BitString> {
        self.entries[i].as_ref()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `s = lg n`.
    pub fn index_bits(&self) -> usize {
        self.entries.len().trailing_zeros() as usize
    }

    /// Whether `(i, j)` is a solution: all three cells present and
    /// `A[i] ⊕ A[j] = A[i ⊕ j]`.
    pub fn is_solution(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        if i >= n || j >= n {
            return false;
        }
        match (self.get(i), self.get(j), self.get(i ^ j)) {
            (Some(a), Some(b), Some(c)) => &(a ^ b) == c,
            _ => false,
        }
    }

    /// Extend with absent cells up to length `n` (a power of two ≥ current length).
    pub fn padded_to(&self, n: usize) -> Result<C3xorArray> {
        if n < self.len() || !n.is_power_of_two() {
            return Err(Error::param(format!("cannot pad length {} to {n}", self.len())));
        }
        let mut entries = self.entries.clone();
        entries.resize(n, None);
        C3xorArray::new(self.width, entries)
    }
}

/// A 6SUM instance over Z₃ᵗ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z3VectorSet {
    elements: Vec<Z3Vector>,
    len: usize,
}

impl Z3VectorSet {
    pub fn new(len: usize, elements: Vec<Z3Vector>) -> Result<Self> {
        if let Some(v) = elements.iter().find(|v| v.len() != len) {
            return Err(Error::WidthMismatch {
                expected: len,
                actual: v.len(),
            });
        }
        Ok(Z3VectorSet { elements, len })
    }

    pub fn elements(&self) -> &[Z3Vector] {
        &self.elements
    }

    /// Vector length `t`.
    pub fn dimension(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Any instance the generators and file formats handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    ThreeSum(IntegerSet),
    ThreeXor(BitVectorSet),
    C3xor(C3xorArray),
    SixSumZ3(Z3VectorSet),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_set_invariants() {
        assert!(IntegerSet::new(vec![-5, 2, 3]).is_ok());
        assert!(IntegerSet::new(vec![1, 1, 2]).is_err());
        assert!(IntegerSet::new(vec![28, 0, 1]).is_err());
        assert_eq!(IntegerSet::new(vec![]).unwrap().magnitude_bound(), 1);
    }

    #[test]
    fn c3xor_array_requires_power_of_two() {
        assert!(C3xorArray::new(3, vec![None; 3]).is_err());
        let a = C3xorArray::new(3, vec![None; 4]).unwrap();
        assert_eq!(a.index_bits(), 2);
        assert_eq!(a.padded_to(16).unwrap().len(), 16);
    }

    #[test]
    fn c3xor_solution_check() {
        let v = |s: &str| Some(s.parse::<BitString>().unwrap());
        let a = C3xorArray::new(3, vec![v("111"), v("001"), v("010"), v("011")]).unwrap();
        assert!(a.is_solution(1, 2));
        assert!(!a.is_solution(0, 1));
    }
}
