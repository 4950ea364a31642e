use std::collections::BTreeMap;

use super::XorHashKeys;
use crate::bits::BitString;
use crate::error::{Error, Result};

/// Bucket occupancy of a set under a linear hash.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadStats {
    /// `loads[b]` is the number of elements hashed to bucket `b`.
    pub loads: Vec<usize>,
    /// Load at or above which a bucket counts as overloaded, `2n/R + k`.
    pub threshold: f64,
    /// Number of elements sitting in overloaded buckets.
    pub overloaded: usize,
}

impl LoadStats {
    /// Map from bucket size to the number of buckets of that size.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &l in &self.loads {
            *h.entry(l).or_insert(0) += 1;
        }
        h
    }

    pub fn max_load(&self) -> usize {
        self.loads.iter().copied().max().unwrap_or(0)
    }

    pub fn is_overloaded(&self, bucket: usize) -> bool {
        self.loads[bucket] as f64 >= self.threshold
    }
}

pub fn bucket_load_stats(keys: &XorHashKeys, set: &[BitString], k: f64) -> Result<LoadStats> {
    let r = keys.output_width();
    if r >= 31 {
        return Err(Error::param(format!("{r} hash bits is too many buckets")));
    }
    let buckets = 1usize << r;
    let mut loads = vec![0usize; buckets];
    for x in set {
        loads[keys.bucket(x)?] += 1;
    }
    let threshold = 2.0 * set.len() as f64 / buckets as f64 + k;
    let overloaded = loads.iter().filter(|&&l| l as f64 >= threshold).sum();
    Ok(LoadStats {
        loads,
        threshold,
        overloaded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_hash_is_perfect() {
        let keys = XorHashKeys::new(3, (0..3).map(|j| BitString::from_positions(3, [j]).unwrap()).collect()).unwrap();
        let set: Vec<BitString> = (0..8).map(|v| BitString::from_u64(3, v).unwrap()).collect();
        let stats = bucket_load_stats(&keys, &set, 1.0).unwrap();
        assert!(stats.loads.iter().all(|&l| l == 1));
        assert_eq!(stats.overloaded, 0);
        assert_eq!(stats.histogram(), BTreeMap::from([(1, 8)]));
    }

    #[test]
    fn constant_hash_overloads_everything() {
        let keys = XorHashKeys::new(4, vec![]).unwrap();
        let set: Vec<BitString> = (0..5).map(|v| BitString::from_u64(4, v).unwrap()).collect();
        let stats = bucket_load_stats(&keys, &set, 1.0).unwrap();
        assert_eq!(stats.loads, vec![5]);
        assert_eq!(stats.overloaded, 0); // threshold 2·5 + 1
        let stats = bucket_load_stats(&keys, &set, -5.0).unwrap();
        assert_eq!(stats.overloaded, 5);
    }
}
