use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Keys `a¹ … aʳ` of the linear hash `h(x) = (⟨a¹,x⟩, …, ⟨aʳ,x⟩)` over GF(2).
///
/// `h` is linear, so `h(x ⊕ y) = h(x) ⊕ h(y)` and `h(0) = 0`, and for fixed
/// `x ≠ y` a uniform key choice gives `Pr[h(x) = h(y)] = 2^-r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorHashKeys {
    keys: Vec<BitString>,
    input_width: usize,
}

impl XorHashKeys {
    pub fn new(input_width: usize, keys: Vec<BitString>) -> Result<Self> {
        if let Some(k) = keys.iter().find(|k| k.width() != input_width) {
            return Err(Error::WidthMismatch {
                expected: input_width,
                actual: k.width(),
            });
        }
        Ok(XorHashKeys { keys, input_width })
    }

    pub fn random<R: Rng + ?Sized>(input_width: usize, output_width: usize, rng: &mut R) -> Self {
        let keys = (0..output_width).map(|_| BitString::random(input_width, rng)).collect();
        XorHashKeys { keys, input_width }
    }

    pub fn keys(&self) -> &[BitString] {
        &self.keys
    }

    pub fn input_width(&self) -> usize {
        self.input_width
    }

    pub fn output_width(&self) -> usize {
        self.keys.len()
    }

    pub fn apply(&self, x: &BitString) -> Result<BitString> {
        if x.width() != self.input_width {
            return Err(Error::WidthMismatch {
                expected: self.input_width,
                actual: x.width(),
            });
        }
        let mut out = BitString::zeros(self.keys.len());
        for (j, a) in self.keys.iter().enumerate() {
            if a.dot(x) {
                out.set(j, true);
            }
        }
        Ok(out)
    }

    /// Hash value as a bucket number; requires output width below 64.
    pub fn bucket(&self, x: &BitString) -> Result<usize> {
        debug_assert!(self.keys.len() < 64);
        Ok(self.apply(x)?.to_u64().expect("output width below 64") as usize)
    }
}

pub fn hash_apply(keys: &XorHashKeys, x: &BitString) -> Result<BitString> {
    keys.apply(x)
}

pub fn sample_hash(input_width: usize, output_width: usize, seed: u64) -> XorHashKeys {
    XorHashKeys::random(input_width, output_width, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let keys = XorHashKeys::new(2, vec!["11".parse().unwrap()]).unwrap();
        assert_eq!(keys.apply(&"01".parse().unwrap()).unwrap(), "1".parse().unwrap());
        assert!(keys.apply(&BitString::zeros(3)).is_err());

        let k = sample_hash(8, 3, 1);
        assert_eq!(k.output_width(), 3);
        assert!(k.keys().iter().all(|a| a.width() == 8));
        assert!(k.apply(&BitString::zeros(8)).unwrap().is_zero());

        let constant = sample_hash(5, 0, 9);
        let x = BitString::from_u64(5, 0b10110).unwrap();
        assert_eq!(
            constant.apply(&x).unwrap(),
            constant.apply(&BitString::zeros(5)).unwrap()
        );
    }

    #[test]
    fn linear_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let l = rng.gen_range(1..100);
            let keys = XorHashKeys::random(l, rng.gen_range(0..20), &mut rng);
            let x = BitString::random(l, &mut rng);
            let y = BitString::random(l, &mut rng);
            let lhs = &keys.apply(&x).unwrap() ^ &keys.apply(&y).unwrap();
            assert_eq!(lhs, keys.apply(&(&x ^ &y)).unwrap());
        }
    }
}
