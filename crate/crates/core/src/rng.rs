//! Seeded random streams.
//!
//! Every random decision is drawn from a ChaCha stream selected by
//! `(seed, stream)`, so a parallel loop that gives iteration `i` its own
//! stream produces the same output as the serial loop.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Independent generator for `(seed, stream)`.
pub fn substream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives a child seed, e.g. one graph seed per trial from a master seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    substream(seed, stream).next_u64()
}
