//! Benchmark fixtures.

use std::sync::Arc;

use ncgabor::random;
use ncgabor::{by_name, dual_of, PlancherelAtlas, Signal, C64};

/// Atlas of a catalog group plus two seeded signals on it.
pub fn finite_fixture(name: &str, seed: u64) -> (Arc<PlancherelAtlas>, Signal, Signal) {
    let atlas = Arc::new(dual_of(&Arc::new(by_name(name).expect("catalog group"))));
    let mut rng = random::rng(seed);
    let f = random::signal(atlas.group(), &mut rng);
    let psi = random::signal(atlas.group(), &mut rng);
    (atlas, f, psi)
}

/// Seeded complex samples.
pub fn samples(n: usize, seed: u64) -> Vec<C64> {
    random::complex_vec(n, &mut random::rng(seed))
}
