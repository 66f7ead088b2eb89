//! Keyed random streams.
//!
//! Every random draw the solver makes is addressed by the master seed and
//! its position in the computation (outer level, inner level, iteration,
//! guess, purpose). Sample `j` of a stream comes from ChaCha sub-stream
//! `j / CHUNK`, so results never depend on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Purpose {
    Estimate = 1,
    Select = 2,
    Binomial = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamKey(u64);

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl StreamKey {
    pub fn new(seed: u64) -> Self {
        Self(mix(seed))
    }

    /// Derives a child key; distinct coordinate paths give unrelated keys.
    pub fn child(self, coord: u64) -> Self {
        Self(mix(self.0 ^ mix(coord.wrapping_add(0x632b_e59b_d9b4_e019))))
    }

    pub(crate) fn for_purpose(self, purpose: Purpose) -> Self {
        self.child(purpose as u64)
    }

    pub(crate) fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Generator for samples `chunk * CHUNK .. (chunk + 1) * CHUNK`.
    pub(crate) fn chunk_rng(self, chunk: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(chunk);
        rng
    }
}
