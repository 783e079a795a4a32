//! Seeded randomness.
//!
//! Every random choice in the crate draws from ChaCha8 (`rand_chacha`)
//! seeded with `seed_from_u64(seed)` and switched to a per-purpose stream.
//! Indices are taken as `next_u64() % n`. ChaCha8 output is value-stable
//! across `rand_chacha` releases, so seeds reproduce across versions.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Situation generation.
pub const STREAM_SITUATIONS: u64 = 0;
/// Exploration policy.
pub const STREAM_POLICY: u64 = 1;
/// Scripted co-agent.
pub const STREAM_CO_AGENT: u64 = 2;
/// Synthetic instances and corpora.
pub const STREAM_INSTANCES: u64 = 3;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn below(rng: &mut SeededRng, n: u64) -> u64 {
    assert!(n > 0, "empty range");
    rng.next_u64() % n
}

/// True with probability `num / den`.
pub fn chance(rng: &mut SeededRng, num: u64, den: u64) -> bool {
    below(rng, den) < num
}

pub fn word(rng: &mut SeededRng, bits: usize) -> u32 {
    (rng.next_u64() as u32) & crate::bits::low_mask(bits)
}
