//! Fixed benchmark inputs, so every bench measures the same graphs.

use bipartify::{rng_from_seed, sample_instance, Graph, Model};

pub const BENCH_SEED: u64 = 2024;

/// One connected non-bipartite instance of `model` on `n` vertices.
pub fn instance(model: Model, n: usize) -> Graph {
    sample_instance(model, n, &mut rng_from_seed(BENCH_SEED))
        .expect("bench instance")
        .0
}
