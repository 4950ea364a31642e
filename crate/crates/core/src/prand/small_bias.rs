//! Almost k-wise independent bits from the powering construction.
//!
//! A seed names a pair `(x, y)` in GF(2^s)²; output bit `i` is `⟨xⁱ, y⟩`. Any
//! nonempty parity of output bits equals `⟨p(x), y⟩` for a nonzero polynomial
//! `p` of degree below `n`, so its bias is at most `n / 2^s`. Bias `ε` on all
//! parities puts every `k` coordinates within statistical distance
//! `2^(k/2) · ε / 2` of uniform, hence `ε = α · 2^(-k/2)` gives `α`-closeness.

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Default cap, in bits, on seed spaces that may be enumerated exhaustively.
pub const DEFAULT_SEED_CAP: u32 = 32;

/// Largest field degree supported; products then fit in 64 bits.
const MAX_FIELD_BITS: u32 = 32;

/// GF(2^s) with elements as the low `s` bits of a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2Field {
    bits: u32,
    modulus: u64,
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: `f` of degree `s` is irreducible iff `gcd(x^(2^i) - x, f) = 1`
/// for every `1 ≤ i ≤ s/2`.
fn is_irreducible(f: u64) -> bool {
    let s = degree(f);
    if s < 1 {
        return false;
    }
    let mut power = 0b10u64; // x
    for _ in 0..s / 2 {
        power = poly_mod(clmul(power, power), f);
        if poly_gcd(f, power ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

impl Gf2Field {
    /// The field built on the numerically smallest irreducible polynomial of degree `bits`.
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > MAX_FIELD_BITS {
            return Err(Error::param(format!(
                "field degree {bits} outside 1..={MAX_FIELD_BITS}"
            )));
        }
        let top = 1u64 << bits;
        let modulus = (top + 1..top << 1)
            .step_by(2)
            .find(|&f| is_irreducible(f))
            .or_else(|| (bits == 1).then_some(0b10))
            .expect("irreducible polynomials exist in every degree");
        Ok(Gf2Field { bits, modulus })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        poly_mod(clmul(a, b), self.modulus)
    }
}

/// Parameters of an almost k-wise independent bit source.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallBiasSpec {
    n: usize,
    k: u32,
    alpha: f64,
    field: Gf2Field,
}

impl SmallBiasSpec {
    pub fn new(n: usize, k: u32, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::param(format!("closeness {alpha} outside (0, 1]")));
        }
        let eps = alpha * 2f64.powf(-(k as f64) / 2.0);
        let need = (n.max(1) as f64 / eps).log2().ceil().max(1.0) as u32;
        if need > MAX_FIELD_BITS {
            return Err(Error::param(format!(
                "generator for n={n}, k={k}, alpha={alpha} needs GF(2^{need})"
            )));
        }
        Ok(SmallBiasSpec {
            n,
            k,
            alpha,
            field: Gf2Field::new(need)?,
        })
    }

    pub fn output_len(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn field(&self) -> Gf2Field {
        self.field
    }

    pub fn seed_bits(&self) -> u32 {
        2 * self.field.bits
    }

    fn seed_mask(&self) -> u64 {
        if self.seed_bits() == 64 {
            u64::MAX
        } else {
            (1u64 << self.seed_bits()) - 1
        }
    }

    /// Split a seed into `(x, y)`. Seeds pass through a fixed bijection of the
    /// seed space first, so that seeds taken in numeric order do not start
    /// with a long run of `y = 0`.
    pub fn decode_seed(&self, seed: u64) -> Result<(u64, u64)> {
        if seed & !self.seed_mask() != 0 {
            return Err(Error::SeedOutOfRange {
                seed,
                bits: self.seed_bits(),
            });
        }
        let s = self.field.bits;
        let mask = self.seed_mask();
        let mut v = seed.wrapping_mul(MIX_A) & mask;
        v ^= v >> s;
        v = v.wrapping_mul(MIX_B) & mask;
        Ok((v & ((1u64 << s) - 1), v >> s))
    }

    /// Inverse of [`decode_seed`](Self::decode_seed).
    pub fn encode_seed(&self, x: u64, y: u64) -> Result<u64> {
        let s = self.field.bits;
        if x >> s != 0 || y >> s != 0 {
            return Err(Error::param("field element out of range"));
        }
        let mask = self.seed_mask();
        let mut v = (y << s) | x;
        v = v.wrapping_mul(inverse_odd(MIX_B)) & mask;
        v ^= v >> s;
        Ok(v.wrapping_mul(inverse_odd(MIX_A)) & mask)
    }
}

const MIX_A: u64 = 0x9e37_79b9_7f4a_7c15;
const MIX_B: u64 = 0xbf58_476d_1ce4_e5b9;

/// Inverse of an odd number modulo 2^64 (Newton iteration).
fn inverse_odd(a: u64) -> u64 {
    let mut inv = a;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(inv)));
    }
    inv
}

/// Expand `seed` into `n` bits: bit `i` is `⟨xⁱ, y⟩` with `x⁰ = 1`.
pub fn small_bias_bits(spec: &SmallBiasSpec, seed: u64) -> Result<BitString> {
    let (x, y) = spec.decode_seed(seed)?;
    let mut out = BitString::zeros(spec.n);
    let mut power = 1u64;
    for i in 0..spec.n {
        if (power & y).count_ones() & 1 == 1 {
            out.set(i, true);
        }
        power = spec.field.mul(power, x);
    }
    Ok(out)
}

/// Every seed exactly once, in increasing order, if the space is within `cap` bits.
pub fn enumerate_seeds(spec: &SmallBiasSpec, cap: u32) -> Result<std::ops::Range<u64>> {
    let bits = spec.seed_bits();
    if bits > cap || bits >= 64 {
        return Err(Error::SeedCapExceeded { bits, cap });
    }
    Ok(0..1u64 << bits)
}
