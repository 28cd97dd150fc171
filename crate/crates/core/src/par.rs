//! Data-parallel helpers. With the `parallel` feature (on by default) work is
//! spread over the rayon pool; without it the same functions run
//! sequentially and produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_sequential<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

/// Order-preserving map.
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// Index of some item failing `pred`, or `None` if all pass. The parallel
/// build returns the smallest such index, matching the sequential one.
pub fn find_failure<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> Option<usize> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().position_first(|x| !pred(x))
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().position(|x| !pred(x))
    }
}
