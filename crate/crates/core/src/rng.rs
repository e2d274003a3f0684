//! Seedable, platform-independent random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The stream type threaded through every stochastic operation.
pub type SimRng = ChaCha8Rng;

pub fn stream(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// SplitMix64 finalizer over `(base, a, b)`; gives independent per-trial
/// seeds that do not depend on evaluation order.
pub fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut z = base
        .wrapping_add(a.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(b.wrapping_mul(0xd1b5_4a32_d192_ed03));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
