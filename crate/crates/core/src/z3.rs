//! Vectors over Z₃, stored bitsliced: one plane marks digits equal to 1,
//! the other digits equal to 2.

use std::fmt;
use std::ops::{Add, Neg};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z3Vector {
    len: usize,
    ones: Vec<u64>,
    twos: Vec<u64>,
}

impl Z3Vector {
    pub fn zero(len: usize) -> Self {
        let words = len.div_ceil(64);
        Z3Vector {
            len,
            ones: vec![0; words],
            twos: vec![0; words],
        }
    }

    /// Component `i` is `digits[i]`; every digit must be 0, 1 or 2.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        let mut v = Self::zero(digits.len());
        for (i, &d) in digits.iter().enumerate() {
            v.set(i, d)?;
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u8 {
        let (w, b) = (i / 64, i % 64);
        if self.ones[w] >> b & 1 == 1 {
            1
        } else if self.twos[w] >> b & 1 == 1 {
            2
        } else {
            0
        }
    }

    pub fn set(&mut self, i: usize, digit: u8) -> Result<()> {
        if i >= self.len {
            return Err(Error::param(format!("component {i} outside length {}", self.len)));
        }
        let (w, mask) = (i / 64, 1u64 << (i % 64));
        self.ones[w] &= !mask;
        self.twos[w] &= !mask;
        match digit {
            0 => {}
            1 => self.ones[w] |= mask,
            2 => self.twos[w] |= mask,
            _ => return Err(Error::param(format!("digit {digit} is not in Z3"))),
        }
        Ok(())
    }

    pub fn digits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.ones.iter().chain(&self.twos).all(|&w| w == 0)
    }

    pub fn add_assign(&mut self, rhs: &Z3Vector) {
        assert_eq!(self.len, rhs.len, "adding Z3 vectors of different lengths");
        for w in 0..self.ones.len() {
            let (a1, a2) = (self.ones[w], self.twos[w]);
            let (b1, b2) = (rhs.ones[w], rhs.twos[w]);
            let za = !(a1 | a2);
            let zb = !(b1 | b2);
            self.ones[w] = (za & b1) | (a1 & zb) | (a2 & b2);
            self.twos[w] = (za & b2) | (a2 & zb) | (a1 & b1);
        }
    }

    /// Big-endian base-3 rendering: the last character is component 0.
    pub fn to_digit_string(&self) -> String {
        (0..self.len).rev().map(|i| char::from(b'0' + self.get(i))).collect()
    }

    pub fn from_digit_string(s: &str) -> Result<Self> {
        let digits = s
            .bytes()
            .rev()
            .map(|c| match c {
                b'0'..=b'2' => Ok(c - b'0'),
                _ => Err(Error::param(format!("invalid base-3 digit {:?}", c as char))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_digits(&digits)
    }
}

impl Add for &Z3Vector {
    type Output = Z3Vector;

    fn add(self, rhs: &Z3Vector) -> Z3Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Neg for &Z3Vector {
    type Output = Z3Vector;

    fn neg(self) -> Z3Vector {
        Z3Vector {
            len: self.len,
            ones: self.twos.clone(),
            twos: self.ones.clone(),
        }
    }
}

impl fmt::Debug for Z3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z3Vector({})", self.to_digit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn addition_table_matches_mod_three() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let x = Z3Vector::from_digits(&[a]).unwrap();
                let y = Z3Vector::from_digits(&[b]).unwrap();
                assert_eq!((&x + &y).get(0), (a + b) % 3, "{a}+{b}");
                assert_eq!((-&x).get(0), (3 - a) % 3);
            }
        }
    }

    #[test]
    fn digit_string_is_big_endian() {
        let v = Z3Vector::from_digits(&[0, 1, 0]).unwrap();
        assert_eq!(v.to_digit_string(), "010");
        let w = Z3Vector::from_digit_string("210").unwrap();
        assert_eq!(w.digits(), vec![0, 1, 2]);
        assert!(Z3Vector::from_digit_string("13").is_err());
    }

    proptest! {
        #[test]
        fn componentwise_sum(digits in prop::collection::vec((0u8..3, 0u8..3), 0..200)) {
            let a: Vec<u8> = digits.iter().map(|p| p.0).collect();
            let b: Vec<u8> = digits.iter().map(|p| p.1).collect();
            let s = &Z3Vector::from_digits(&a).unwrap() + &Z3Vector::from_digits(&b).unwrap();
            let expect: Vec<u8> = digits.iter().map(|p| (p.0 + p.1) % 3).collect();
            prop_assert_eq!(s.digits(), expect);
            let x = Z3Vector::from_digits(&a).unwrap();
            prop_assert!((&x + &(-&x)).is_zero());
        }
    }
}
