//! Seeded, splittable random streams.
//!
//! A [`RngSeed`] names a ChaCha8 stream. Batch samplers cut their output into
//! fixed-size blocks and give every block its own keystream position, so the
//! values produced do not depend on how blocks are spread over threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples drawn from one block generator before moving to the next.
pub const BLOCK_SIZE: usize = 256;

/// Seed plus substream id; identical values reproduce identical output.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Generator at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        self.block_rng(0)
    }

    /// Generator for block `block`; blocks are 2^36 words apart in the keystream.
    pub fn block_rng(&self, block: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos((block as u128) << 36);
        rng
    }

    /// A different substream of the same seed.
    pub fn substream(&self, stream: u64) -> Self {
        Self { seed: self.seed, stream }
    }
}

/// Runs `f` inside a pool of `threads` workers (`0` uses the global pool).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Draws `count` values with `draw`, block by block, in parallel.
///
/// The result is identical for every thread count.
pub fn sample_blocks<T, F>(seed: RngSeed, count: usize, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    let blocks = count.div_ceil(BLOCK_SIZE);
    let chunks: Vec<Result<Vec<T>>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = seed.block_rng(b as u64);
            let len = BLOCK_SIZE.min(count - b * BLOCK_SIZE);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    for chunk in chunks {
        out.extend(chunk?);
    }
    Ok(out)
}
