//! Deterministic random numbers with a pinned draw discipline.
//!
//! Every randomized component of this crate (initial permutations, instance
//! generators, cost sampling, the experiment seed schedule) draws from
//! [`SplitMix64`], Steele, Lea and Flood's 64-bit mixing generator. The
//! algorithm is fixed here, byte for byte, so that a given seed reproduces the
//! same instances and results on any platform, and so the stream can be
//! re-derived in another language from this description alone:
//!
//! * state update: `state += 0x9e3779b97f4a7c15` (wrapping), then the output
//!   is `mix64` of the new state;
//! * `next_f64` maps a draw to `[0, 1)` as `(x >> 11) as f64 * 2^-53`;
//! * `next_below(bound)` maps a draw to `0..bound` by the 128-bit
//!   multiply-shift `(x * bound) >> 64`;
//! * `bernoulli(p)` is `next_f64() < p` (one draw per coin).
//!
//! Child seeds (per instance, per run) come from [`derive_seed`], a stateless
//! combination of a parent seed and a stream index.

/// Finalizer of the SplitMix64 generator.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive an independent child seed from a parent seed and a stream index.
///
/// Defined as `mix64(parent ^ (index + 1) * 0x9e3779b97f4a7c15)` with wrapping
/// arithmetic. The `+ 1` keeps stream 0 distinct from the parent itself.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    mix64(parent ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        mix64(self.state)
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `0..bound` via 128-bit multiply-shift.
    ///
    /// The modulo bias of this mapping is below `bound / 2^64`, far outside
    /// anything observable at the sample sizes used here.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below requires a positive bound");
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// One Bernoulli coin with success probability `p`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}
