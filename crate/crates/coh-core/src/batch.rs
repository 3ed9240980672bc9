//! Index-ordered batch evaluation, parallel when the `parallel` feature is
//! enabled.
//!
//! Scans and channel-check batteries funnel their per-item work through
//! [`map_indexed`]. Results come back in index order either way, so the
//! feature flag (and the rayon thread count) never changes any output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f(0), ..., f(n - 1)`, in parallel when the `parallel` feature
/// is on, and returns the results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Sequential build of [`map_indexed`].
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    map_indexed_seq(n, f)
}

/// Always-sequential variant; the reference path the benchmarks compare
/// against.
pub fn map_indexed_seq<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}
