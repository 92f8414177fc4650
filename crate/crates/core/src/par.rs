//! Data-parallel helpers. With the `parallel` feature off, or when a caller
//! passes `parallel = false`, everything runs on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default execution mode: parallel if compiled in.
pub const DEFAULT_PARALLEL: bool = cfg!(feature = "parallel");

/// `f(i)` for `i in 0..len`, results in index order.
pub fn map_range<R, F>(len: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..len).map(f).collect()
}

/// `f(&x)` for every item, results in input order.
pub fn map_slice<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
