//! Internal dispatch between rayon and plain loops.
//!
//! Results are collected in index order, so callers get identical output
//! whatever the thread count, and the `parallel` flag lets the public
//! `*_seq` kernel variants share one implementation with their parallel
//! counterparts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` and collects in index order.
pub(crate) fn map_indices<T: Send>(
    n: usize,
    parallel: bool,
    f: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(&f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Maps `f` over a slice and collects in slice order.
pub(crate) fn map_slice<S: Sync, T: Send>(
    items: &[S],
    parallel: bool,
    f: impl Fn(&S) -> T + Sync,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
