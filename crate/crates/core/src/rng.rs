//! Counter-based seed streams: replicate `r` of master seed `s` always sees the
//! same ChaCha stream, whatever thread runs it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn stream(master: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// Sub-stream for a named stage of replicate `index`, so independent stages of
/// one replicate never share random numbers.
pub fn substream(master: u64, index: u64, stage: u64) -> SimRng {
    let mixed = master ^ stage.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    stream(mixed, index)
}
