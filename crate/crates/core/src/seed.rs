//! Seed derivation and keyed random substreams.
//!
//! All randomness in the crate flows from 64-bit seeds through the SplitMix64
//! finalizer, which is a bijection on `u64`. Derived seeds are therefore
//! reproducible on every platform and never depend on iteration order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in an experiment with master seed `master`.
///
/// `mix64(master + (trial + 1) * GOLDEN_GAMMA)`. The gamma is odd, so for a
/// fixed master the inner map is injective modulo 2^64, and `mix64` is a
/// bijection; distinct trials always receive distinct seeds.
pub fn derive_seed(master: u64, trial: u64) -> u64 {
    mix64(master.wrapping_add(trial.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Portable stream RNG used for every sampled quantity other than edge costs.
pub fn stream_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform variate in `[0, 1)` attached to the ordered pair `(u, v)`.
///
/// Pure function of its arguments; callers that want symmetric costs pass the
/// endpoints in canonical order.
#[inline]
pub fn edge_uniform(seed: u64, u: u32, v: u32) -> f64 {
    let key = ((u as u64) << 32) | v as u64;
    let h = mix64(mix64(seed ^ GOLDEN_GAMMA) ^ key.wrapping_mul(GOLDEN_GAMMA));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
