//! Portable seeded random stream.
//!
//! The generator is xoshiro256** seeded from a `u64` through SplitMix64
//! (the reference seeding procedure). Derived draws are defined here, not
//! by any library sampling routine, so another implementation of the same
//! recurrences reproduces every stream bit for bit:
//!
//! - `next_f64`: `(next_u64 >> 11) * 2^-53`, uniform on `[0, 1)`.
//! - `below(n)`: `(next_u64 as u128 * n) >> 64`, in `0..n`.
//! - `stream(seed, i)`: the seeded generator advanced by `i` jumps of 2^128.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    /// Independent sub-stream `index` of `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut inner = Xoshiro256StarStar::seed_from_u64(seed);
        for _ in 0..index {
            inner.jump();
        }
        SeededRng(inner)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}
