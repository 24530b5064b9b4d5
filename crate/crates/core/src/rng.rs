//! Deterministic pseudorandomness for experiments.
//!
//! Reports must reproduce bit for bit from a 64-bit seed, on any platform
//! and independent of dependency versions, so the generator is pinned here
//! in full rather than delegated to an external crate:
//!
//! * The stream is SplitMix64 (Steele, Lea & Flood's `splitmix64`): the
//!   state advances by the constant 0x9E3779B97F4A7C15 and the output is
//!   the finalizer `z ^= z>>30, z *= 0xBF58476D1CE4E5B9, z ^= z>>27,
//!   z *= 0x94D049BB133111EB, z ^= z>>31` applied to the new state.
//! * Bounded draws use power-of-two rejection: mask the output to the next
//!   power of two above the bound and retry until the value is in range.
//!   This is exactly uniform and consumes a deterministic-given-the-stream
//!   number of outputs.
//! * Subsets are drawn by a partial Fisher-Yates shuffle of 0..universe
//!   (swap position i with a uniform position in [i, universe)), taking
//!   the first `size` entries, reported sorted.
//!
//! Any reimplementation following the three rules above reproduces every
//! experiment in this crate exactly.

/// SplitMix64 stream with the documented bounded-draw conventions.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Derive an independent seed for a named substream, so per-instance
    /// streams do not overlap: one SplitMix64 step of `seed XOR stream`.
    pub fn mix(seed: u64, stream: u64) -> u64 {
        SplitMix64::new(seed ^ stream).next_u64()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, bound), bound >= 1, by masked rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mask = bound.next_power_of_two() - 1;
        loop {
            let x = self.next_u64() & mask;
            if x < bound {
                return x;
            }
        }
    }

    /// Uniform draw from [1, bound), bound >= 2.
    pub fn nonzero_below(&mut self, bound: u64) -> u64 {
        1 + self.below(bound - 1)
    }

    /// A uniform size-`size` subset of {0, ..., universe-1}, sorted.
    pub fn subset(&mut self, universe: u64, size: usize) -> Vec<u64> {
        assert!(size as u64 <= universe, "subset larger than universe");
        let mut pool: Vec<u64> = (0..universe).collect();
        for i in 0..size {
            let j = i as u64 + self.below(universe - i as u64);
            pool.swap(i, j as usize);
        }
        let mut chosen: Vec<u64> = pool[..size].to_vec();
        chosen.sort_unstable();
        chosen
    }
}
