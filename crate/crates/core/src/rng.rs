//! Deterministic random streams.
//!
//! Graph coordinates come from xoshiro256** whose 256-bit state is filled by
//! four successive SplitMix64 outputs of the 64-bit seed. A uniform double in
//! `[0, 1)` is the top 53 bits of one `next_u64` scaled by 2^-53. Coordinates
//! are drawn x then y, node by node. Instance seeds for sweeps are derived by
//! folding `(base_seed, n, r, i)` through the SplitMix64 finalizer, see
//! [`instance_seed`]. Any implementation following these rules regenerates
//! identical graphs.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256StarStar};

/// Coordinate stream used by the graph generator.
#[derive(Debug, Clone)]
pub struct CoordStream {
    inner: Xoshiro256StarStar,
}

impl CoordStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform double in `[0, 1)` with 53 bits of precision.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in `[lo, hi)`.
    pub fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }
}

/// One SplitMix64 step from state `x`: add the golden gamma, then finalize.
pub fn splitmix64(x: u64) -> u64 {
    SplitMix64::seed_from_u64(x).next_u64()
}

/// Seed for instance `index` at grid point `(nodes, range)`.
///
/// `h = splitmix64(base); h = splitmix64(h ^ n); h = splitmix64(h ^ bits(r)); h = splitmix64(h ^ i)`
/// where `bits(r)` is the IEEE-754 bit pattern of the range.
pub fn instance_seed(base_seed: u64, nodes: usize, range: f64, index: usize) -> u64 {
    let mut h = splitmix64(base_seed);
    h = splitmix64(h ^ nodes as u64);
    h = splitmix64(h ^ range.to_bits());
    splitmix64(h ^ index as u64)
}
