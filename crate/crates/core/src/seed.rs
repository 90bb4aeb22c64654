//! Named-stream seed derivation.
//!
//! All randomness flows from a single 64-bit master seed. Each component draws
//! from its own named stream (`"data"`, `"rp"`, `"easi-init"`, `"mlp"`) so it
//! can be re-seeded independently without disturbing the others.
//!
//! The derivation is a fixed function and part of the tool's contract:
//! FNV-1a over the stream name, XORed into the master seed, finalized with
//! SplitMix64. It involves no platform-dependent state, so the same
//! `(master, name)` pair yields the same stream everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives the seed for a named stream from the master seed.
pub fn stream_seed(master: u64, stream: &str) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = FNV_OFFSET;
    for &b in stream.as_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    splitmix64(master ^ h)
}

/// Seeded generator for a named stream.
pub fn stream_rng(master: u64, stream: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(master, stream))
}

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
