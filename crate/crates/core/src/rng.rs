//! The one seeded generator used for every specialization-based check.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{ratio, Rat};

pub type SuiteRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for a named sub-task, so adding checks elsewhere does
/// not shift the samples of existing ones.
pub fn stream(seed: u64, label: &str) -> SuiteRng {
    // FNV-1a over the label, folded into the seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Small rational `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let r = small_rat(rng);
        if r != Rat::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}
