//! Reproducible random streams.
//!
//! Every Monte Carlo run draws from its own ChaCha stream keyed by `(master seed, stream id)`,
//! so results do not depend on how runs are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream reserved for one-off setup draws (topology, resources) of an experiment.
pub const SETUP_STREAM: u64 = u64::MAX;

pub fn stream_rng(master: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}
