//! Deterministic parallel drivers.
//!
//! Work is split along the fixed partitions defined by the core crate
//! (Monte-Carlo chunks, simulation path indices), each unit draws from its
//! own `RngStream`, and results are reduced in partition order.  The output
//! is therefore bit-identical for any worker count, including 1.

use certistoch_core::error::{Error, Result};
use certistoch_core::mc::{chunk_spec, chunk_sum};
use certistoch_core::numeric::rng::StreamRng;
use certistoch_core::series::{simulate_path, SeriesModel};
use rayon::prelude::*;

/// Builds a rayon pool with exactly `workers` threads.
///
/// # Errors
///
/// [`Error::Domain`] when `workers` is 0 or the pool cannot be created.
pub fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::domain("worker count must be >= 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::domain(format!("cannot build thread pool: {e}")))
}

/// Mean of `n` sampler draws under the deterministic chunk partition,
/// evaluated on `workers` threads.
///
/// Bit-identical to [`certistoch_core::mc::run_chunked`] for every worker
/// count: chunk sums are computed independently (chunk `i` always draws from
/// `RngStream(seed, i)`) and added in chunk-index order.
///
/// # Errors
///
/// Propagates sampler evaluation errors; [`Error::Domain`] when `n` is 0.
pub fn run_certified(
    seed: u64,
    n: u64,
    workers: usize,
    sampler: &(dyn Fn(&mut StreamRng) -> f64 + Sync),
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("estimator needs at least one draw"));
    }
    let pool = build_pool(workers)?;
    let chunks: Vec<(u64, u64)> = chunk_spec(n).collect();
    let sums: Result<Vec<f64>> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(index, len)| chunk_sum(seed, index, len, sampler))
            .collect()
    });
    // The collected Vec preserves chunk order, so this fold reduces in
    // chunk-index order regardless of evaluation order.
    Ok(sums?.iter().fold(0.0, |acc, s| acc + s) / n as f64)
}

/// Synthesizes `paths` trajectories of the series model on `grid` using
/// `workers` threads.  Row `j` of the result is path `j`, a pure function of
/// `(model.seed, j, grid)`, so the output is identical for any worker count.
///
/// # Errors
///
/// Propagates the per-path errors of [`simulate_path`].
pub fn simulate_paths(
    model: &SeriesModel,
    grid: &[f64],
    paths: u64,
    workers: usize,
) -> Result<Vec<Vec<f64>>> {
    let pool = build_pool(workers)?;
    pool.install(|| {
        (0..paths)
            .into_par_iter()
            .map(|j| simulate_path(model, grid, j))
            .collect()
    })
}
