use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent ChaCha stream per purpose so that, e.g., initialization and
/// training noise never share draws for the same user seed.
pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) const INIT: u64 = 1;
pub(crate) const TRAIN: u64 = 2;
pub(crate) const BASELINE: u64 = 3;
pub(crate) const PHANTOM: u64 = 4;
