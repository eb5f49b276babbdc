//! Data-parallel map over independent work items. With the `parallel`
//! feature the work runs on the rayon pool; without it, in order on the
//! calling thread. Output order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_range<U, F>(lo: i64, hi: i64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(i64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (lo..=hi).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..=hi).map(f).collect()
    }
}

/// True when work may run on more than one thread.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
