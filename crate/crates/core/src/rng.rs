//! Seeded randomness shared by the vote model and the Monte Carlo module.
//!
//! Every generator is ChaCha8 (`rand_chacha`), seeded through
//! `SeedableRng::seed_from_u64`. Uniform `f64` draws use `rand`'s `Standard`
//! distribution (53 high bits of a `u64`). Both are platform independent, so
//! a seed fully determines every output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for stream `index` of a master seed:
/// `splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15)`.
pub fn split_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

/// Standard exponential draw, `-ln(U)` with `U` uniform on `(0, 1]`.
fn exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen();
    -(1.0 - u).ln()
}

/// Uniform point on the probability simplex with `N` vertices, drawn by
/// normalizing `N` independent exponentials.
pub fn simplex<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> [f64; N] {
    loop {
        let w: [f64; N] = std::array::from_fn(|_| exponential(rng));
        let total: f64 = w.iter().sum();
        // all-zero draws need every uniform to be exactly 0
        if total > 0.0 {
            return w.map(|x| x / total);
        }
    }
}
