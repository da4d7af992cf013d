//! Replicate fan-out. Replicate `r` draws from `stream(master, r)` only, and
//! results come back in replicate order, so output is independent of the
//! thread count.

use heavycrit::{stream, Error, Result, SimRng};
use rayon::prelude::*;

pub fn threads_from_env() -> usize {
    std::env::var("HEAVYCRIT_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t > 0).unwrap_or(1)
}

pub fn run_replicates<T, F>(threads: usize, master: u64, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut SimRng) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|r| {
                let mut rng = stream(master, r as u64);
                f(r, &mut rng)
            })
            .collect()
    })
}
