//! Execution-mode switch for the data-parallel kernels.
//!
//! The relaxation loops (Bellman-Ford passes, DP layer pulls, cylinder start
//! sweeps) are written against this helper so the same code runs on rayon or
//! sequentially. Kernels are pull-style: each chunk writes only its own
//! output slice, so results are bitwise identical in both modes.

/// How the data-parallel kernels execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    /// Single-threaded reference path.
    Sequential,
    /// rayon work-stealing; falls back to sequential when the crate is built
    /// without the `parallel` feature.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Splits `out` into chunks and calls `f(base_index, chunk)` for each, in
/// parallel when the mode (and feature) allow it. Slices that would not
/// split into at least two chunks run inline; thread-pool dispatch costs
/// more than such levels take to process.
pub(crate) fn for_each_out_chunk<U, F>(mode: ExecMode, out: &mut [U], chunk: usize, f: F)
where
    U: Send,
    F: Fn(usize, &mut [U]) + Sync,
{
    debug_assert!(chunk > 0);
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel if out.len() >= 2 * chunk => {
            use rayon::prelude::*;
            out.par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(i, out_chunk)| f(i * chunk, out_chunk));
        }
        _ => {
            for (i, out_chunk) in out.chunks_mut(chunk).enumerate() {
                f(i * chunk, out_chunk);
            }
        }
    }
}
