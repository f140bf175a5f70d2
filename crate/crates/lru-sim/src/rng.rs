//! Deterministic replication streams.
//!
//! Every replication draws from the same base seed but a distinct ChaCha
//! stream, so replications are independent, reproducible, and can run in
//! parallel without sharing generator state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) fn replication_rng(seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication);
    rng
}
