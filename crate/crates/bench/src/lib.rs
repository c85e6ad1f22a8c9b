//! Shared inputs for the benchmarks.

use std::sync::Arc;

use qvdomain::fixtures::fixture;
use qvdomain::harness::gen::{gen_interpolative_space, gen_ldcpo, GenConfig, SpaceRoute};
use qvdomain::{ClosureSpace, LOrderedSet, Limits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A seeded L-dcpo with `n` points over the named fixture.
pub fn ldcpo(quantale: &str, n: usize, seed: u64) -> LOrderedSet {
    let q = Arc::new(fixture(quantale).expect("known fixture"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_ldcpo(&mut rng, &q, n, &Limits::default(), 500).expect("generator succeeds")
}

/// A seeded interpolative space with `n` points over the named fixture.
pub fn space(quantale: &str, n: usize, seed: u64, route: SpaceRoute) -> ClosureSpace {
    let q = Arc::new(fixture(quantale).expect("known fixture"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_interpolative_space(&mut rng, &q, n, route, &GenConfig::default()).expect("generator succeeds")
}
