//! Seeded pseudorandom inputs for the verification suites.
//!
//! Reports name the generator by [`RNG_ALGORITHM`] so runs can be
//! reproduced from the seed alone.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{FiniteGroup, Signal};
use crate::linalg::C64;

pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3), uniform re/im in [-1, 1)";

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn signal(group: &Arc<FiniteGroup>, rng: &mut impl Rng) -> Signal {
    let values = (0..group.order()).map(|_| complex(rng)).collect();
    Signal::new(Arc::clone(group), values).expect("length matches order")
}

pub fn complex_vec(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..n).map(|_| complex(rng)).collect()
}
