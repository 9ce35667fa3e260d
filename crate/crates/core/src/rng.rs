//! Counter-based uniform variates.
//!
//! Draw `index` of stream `stream` under key `seed` is a pure function of the
//! triple, so realizations can be generated in any order or in parallel.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Sequential reader over one (seed, stream) pair.
#[derive(Debug, Clone)]
pub struct CounterRng {
    inner: ChaCha8Rng,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self::at(seed, stream, 0)
    }

    /// Positioned at draw `index` of the stream.
    pub fn at(seed: u64, stream: u64, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        inner.set_word_pos(2 * index as u128);
        Self { inner }
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    pub fn next_open01(&mut self) -> f64 {
        let bits = self.inner.next_u64() >> 11;
        (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

/// The single draw at (seed, stream, index).
pub fn uniform_at(seed: u64, stream: u64, index: u64) -> f64 {
    CounterRng::at(seed, stream, index).next_open01()
}
