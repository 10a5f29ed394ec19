//! Seeded uniform source used by every sampler in the crate.
//!
//! Draws come from ChaCha20 (`rand_chacha`) seeded through `SeedableRng::seed_from_u64`.
//! Each uniform takes the top 53 bits of one `u64` word and is centred in its bin,
//! `u = (k + 0.5) / 2^53`, so it lies strictly inside `(0, 1)`.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier recorded in run manifests.
pub const RNG_ALGORITHM: &str = "chacha20(rand_chacha 0.3, seed_from_u64); u=(next_u64>>11 + 0.5)*2^-53";

#[derive(Clone, Debug)]
pub struct UniformStream {
    rng: ChaCha20Rng,
}

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// Next uniform in the open interval `(0, 1)`.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * SCALE
    }

    /// Standard normal deviate by inversion.
    pub fn next_normal(&mut self) -> f64 {
        crate::special::normal_quantile(self.next_open01())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and a path of stream coordinates
/// (for example scenario id, sample size, replicate index) by chained SplitMix64 mixing.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}
