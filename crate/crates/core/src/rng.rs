//! Seeded random streams.
//!
//! Every random decision in the generator draws from a ChaCha stream keyed by
//! the master seed, a domain tag identifying the phase, and an index (a cluster
//! id, for per-cluster work). Streams are therefore independent of scheduling
//! order and of the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Phase tags. Distinct tags give disjoint key material.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Kecssn = 1,
    ClusteredSbm = 2,
    OutlierSbm = 3,
    DegreeCorrection = 4,
    PlainSbm = 5,
    Fixture = 6,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream for `(seed, domain, index)`.
pub fn stream(seed: u64, domain: Domain, index: u64) -> Rng {
    let mut key = [0u8; 32];
    let words = [
        splitmix64(seed),
        splitmix64(seed ^ (domain as u64).rotate_left(32)),
        splitmix64(index ^ 0x5851_f42d_4c95_7f2d),
        splitmix64((domain as u64) ^ index.rotate_left(17) ^ seed.rotate_left(41)),
    ];
    for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}
