use std::collections::HashSet;

use crate::error::{Error, Result};

/// xorshift64* generator seeded through SplitMix64.
///
/// Output `i` is `state_i * 0x2545F4914F6CDD1D` where the state advances by
/// the shifts 12, 25, 27. The seed goes once through the SplitMix64 mixer;
/// a zero result is replaced by a fixed nonzero state. Streams are identical
/// on every platform.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = splitmix64(seed);
        Self { state: if state == 0 { 0x9E37_79B9_7F4A_7C15 } else { state } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform integer in `0..bound` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let r = self.next_u64();
            if r < zone {
                return r % bound;
            }
        }
    }
}

/// Samples exactly `per_class` labeled nodes of every class, skipping nodes
/// in `excluded`. Returned ids are sorted.
///
/// Classes are `0..=max label`. Within a class the eligible nodes are taken in
/// ascending id order and a partial Fisher-Yates shuffle picks the sample.
pub fn random_balanced_split(labels: &[i64], per_class: usize, seed: u64, excluded: &[usize]) -> Result<Vec<usize>> {
    let excluded: HashSet<usize> = excluded.iter().copied().collect();
    let n_classes = labels.iter().copied().max().map_or(0, |m| (m + 1).max(0) as usize);
    let mut pools = vec![Vec::new(); n_classes];
    for (i, &y) in labels.iter().enumerate() {
        if y >= 0 && !excluded.contains(&i) {
            pools[y as usize].push(i);
        }
    }
    let mut rng = XorShift64Star::new(seed);
    let mut out = Vec::with_capacity(per_class * n_classes);
    for (class, mut pool) in pools.into_iter().enumerate() {
        if pool.len() < per_class {
            return Err(Error::InsufficientClass { class, available: pool.len(), requested: per_class });
        }
        for k in 0..per_class {
            let j = k + rng.below((pool.len() - k) as u64) as usize;
            pool.swap(k, j);
        }
        out.extend_from_slice(&pool[..per_class]);
    }
    out.sort_unstable();
    Ok(out)
}
