//! Seeded test messages.
//!
//! Trial `t` of seed `s` draws from SplitMix64 seeded with `s + t`, one
//! `next_u64() % q` per coordinate, so any SplitMix64 implementation
//! reproduces the same messages.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::field::Fe;

pub fn random_vector(q: u64, len: usize, seed: u64) -> Vec<Fe> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..len).map(|_| Fe((rng.next_u64() % q) as u32)).collect()
}

/// Message of trial `trial` in a run seeded with `seed`.
pub fn trial_message(q: u64, k: usize, seed: u64, trial: u64) -> Vec<Fe> {
    random_vector(q, k, seed.wrapping_add(trial))
}

/// Like [`trial_message`], redrawn until nonzero.
pub fn nonzero_message(q: u64, k: usize, seed: u64, trial: u64) -> Vec<Fe> {
    let mut s = seed.wrapping_add(trial);
    loop {
        let v = random_vector(q, k, s);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
        s = s.wrapping_add(1 << 32);
    }
}
