//! Seeding and reproducible random number generation.
//!
//! Every randomized operation takes an explicit [`Seed`]; nothing in the
//! crate reads the wall clock or OS entropy. Child seeds for independent
//! streams (histogram sampling, stub shuffling, failure draws, replicate
//! indices) are derived with a splitmix64 chain so that parallel replicates
//! never share generator state.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Identifier for the generator stack, recorded in run metadata so results
/// can be tied to the exact algorithms that produced them.
pub const GENERATOR_ID: &str = "chacha8+splitmix64-derive+fisher-yates/v1";

/// A 64-bit seed. Identical seeds produce bit-identical outputs for
/// identical inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(u64);

impl Seed {
    pub const fn new(value: u64) -> Self {
        Seed(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    /// Derive a child seed as a pure function of `self` and `tags`.
    ///
    /// Distinct tag sequences give statistically independent streams.
    pub fn derive(self, tags: &[u64]) -> Seed {
        let mut state = splitmix64(self.0 ^ 0x706c_6e65_745f_7631); // "plnet_v1"
        for &t in tags {
            state = splitmix64(state ^ t);
        }
        Seed(state)
    }

    /// Seeded generator for this stream.
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn derive_is_pure_and_tag_sensitive() {
        let s = Seed::new(42);
        assert_eq!(s.derive(&[1, 2, 3]), s.derive(&[1, 2, 3]));
        assert_ne!(s.derive(&[1, 2, 3]), s.derive(&[1, 2, 4]));
        assert_ne!(s.derive(&[1, 2]), s.derive(&[2, 1]));
        assert_ne!(s.derive(&[0]), Seed::new(43).derive(&[0]));
    }

    #[test]
    fn rng_streams_are_reproducible() {
        let a: Vec<u64> = (0..8).map(|_| 0).collect::<Vec<_>>();
        let mut r1 = Seed::new(7).rng();
        let mut r2 = Seed::new(7).rng();
        let mut out1 = a.clone();
        let mut out2 = a;
        for v in out1.iter_mut() {
            *v = r1.next_u64();
        }
        for v in out2.iter_mut() {
            *v = r2.next_u64();
        }
        assert_eq!(out1, out2);
    }
}
