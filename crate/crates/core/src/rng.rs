//! Deterministic per-task random streams derived from one master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for task `stream` of a run seeded with `master`. Streams are
/// independent, so results do not depend on how tasks are scheduled.
pub fn task_rng(master: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}

/// Stream id for the `index`-th task of grid row `row` in experiment `tag`.
pub fn stream_id(tag: u16, row: u32, index: u32) -> u64 {
    (tag as u64) << 48 | (row as u64 & 0xFFFF) << 32 | index as u64
}
