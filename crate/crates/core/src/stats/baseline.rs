//! Seeded random-walk baseline.
//!
//! Ticks come from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64(seed)`. Each tick draws one `next_u32`; the
//! top bit set means UP (+1), clear means DOWN (−1). The stream is stable
//! across platforms and releases of the 0.9 generator.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::Symbol;
use crate::dynamics::Series;
use crate::error::Result;

/// `n_ticks` independent equiprobable ±1 ticks.
pub fn random_walk_baseline(n_ticks: usize, seed: u64) -> Result<Series> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let movements: Vec<Symbol> = (0..n_ticks).map(|_| (rng.next_u32() >> 31) as Symbol).collect();
    Series::from_movements(movements, 2, 2)
}
