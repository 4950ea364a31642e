//! Fixed-width bit strings over GF(2).
//!
//! Bit `i` of a string is the coefficient of `2^i` when the string is read as
//! an unsigned integer, so hex and binary renderings are big-endian.

use std::fmt;
use std::ops::BitXor;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: usize,
    words: Vec<u64>,
}

fn word_count(width: usize) -> usize {
    width.div_ceil(64)
}

impl BitString {
    pub fn zeros(width: usize) -> Self {
        BitString {
            width,
            words: vec![0; word_count(width)],
        }
    }

    /// Low `width` bits of `value`; higher bits of `value` must be zero.
    pub fn from_u64(width: usize, value: u64) -> Result<Self> {
        if width < 64 && value >> width != 0 {
            return Err(Error::WidthMismatch {
                expected: width,
                actual: 64 - value.leading_zeros() as usize,
            });
        }
        let mut s = Self::zeros(width);
        if width > 0 {
            s.words[0] = value;
        }
        Ok(s)
    }

    pub fn from_positions(width: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::zeros(width);
        for p in positions {
            if p >= width {
                return Err(Error::param(format!("bit position {p} outside width {width}")));
            }
            s.set(p, true);
        }
        Ok(s)
    }

    pub fn random<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Self {
        let mut s = Self::zeros(width);
        for w in s.words.iter_mut() {
            *w = rng.gen();
        }
        s.mask_top();
        s
    }

    fn mask_top(&mut self) {
        let rem = self.width % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.width);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&i| self.get(i))
    }

    pub fn checked_xor(&self, other: &BitString) -> Result<BitString> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                actual: other.width,
            });
        }
        Ok(self ^ other)
    }

    pub fn xor_assign(&mut self, other: &BitString) {
        assert_eq!(self.width, other.width, "xor of bit strings with different widths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product modulo 2.
    pub fn dot(&self, other: &BitString) -> bool {
        assert_eq!(self.width, other.width, "inner product of different widths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// `self ∘ low`: `self` occupies the high bits, `low` the low bits.
    pub fn concat(&self, low: &BitString) -> BitString {
        let mut out = BitString::zeros(self.width + low.width);
        out.words[..low.words.len()].copy_from_slice(&low.words);
        for i in self.ones() {
            out.set(low.width + i, true);
        }
        out
    }

    /// Bits `[lo, lo + len)` as a new string.
    pub fn slice(&self, lo: usize, len: usize) -> BitString {
        let mut out = BitString::zeros(len);
        for i in 0..len {
            if self.get(lo + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Value as an integer, if it fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words.iter().skip(1).any(|&w| w != 0) {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    pub fn to_hex(&self) -> String {
        let digits = self.width.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u32;
            for b in 0..4 {
                let i = d * 4 + b;
                if i < self.width && self.get(i) {
                    nibble |= 1 << b;
                }
            }
            s.push(char::from_digit(nibble, 16).unwrap());
        }
        s
    }

    /// Parse a big-endian hex string into a `width`-bit string. Leading zero
    /// digits are accepted; set bits at or beyond `width` are rejected.
    pub fn from_hex(text: &str, width: usize) -> Result<BitString> {
        if text.is_empty() {
            return Err(Error::param("empty hex string"));
        }
        let mut s = BitString::zeros(width);
        for (d, ch) in text.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::param(format!("invalid hex digit {ch:?}")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let i = d * 4 + b;
                    if i >= width {
                        return Err(Error::WidthMismatch {
                            expected: width,
                            actual: i + 1,
                        });
                    }
                    s.set(i, true);
                }
            }
        }
        Ok(s)
    }
}

impl BitXor for &BitString {
    type Output = BitString;

    fn bitxor(self, rhs: &BitString) -> BitString {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width).rev() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Parse a big-endian binary literal such as `"0110"`; width is the string length.
impl std::str::FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::zeros(s.len());
        for (i, ch) in s.chars().rev().enumerate() {
            match ch {
                '0' => {}
                '1' => out.set(i, true),
                _ => return Err(Error::param(format!("invalid binary digit {ch:?}"))),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn hex_is_big_endian_and_left_padded() {
        assert_eq!(b("101").to_hex(), "5");
        assert_eq!(BitString::from_u64(12, 0x0a3).unwrap().to_hex(), "0a3");
        assert_eq!(
            BitString::from_hex("0a3", 12).unwrap(),
            BitString::from_u64(12, 0xa3).unwrap()
        );
        assert!(BitString::from_hex("1f", 4).is_err());
        assert!(BitString::from_hex("0f", 4).is_ok());
    }

    #[test]
    fn concat_puts_first_operand_high() {
        assert_eq!(b("11").concat(&b("01")), b("1101"));
        let wide = BitString::from_u64(70, 1).unwrap();
        let c = b("1").concat(&wide);
        assert_eq!(c.width(), 71);
        assert!(c.get(70) && c.get(0));
        assert_eq!(c.slice(70, 1), b("1"));
    }

    #[test]
    fn dot_is_parity_of_and() {
        assert!(b("11").dot(&b("01")));
        assert!(!b("11").dot(&b("11")));
    }

    proptest! {
        #[test]
        fn hex_round_trip(width in 1usize..150, seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = BitString::random(width, &mut rng);
            prop_assert_eq!(BitString::from_hex(&x.to_hex(), width).unwrap(), x);
        }
    }
}
