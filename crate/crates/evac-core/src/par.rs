//! Data-parallel map with a sequential fallback.
//!
//! All bulk enumeration in the crate (candidate targets, fault subsets,
//! scenario grids, random draws) funnels through [`map_collect`], which runs
//! on rayon when the `parallel` feature is enabled (the default) and on a
//! plain iterator otherwise. Outputs are collected in input order in both
//! modes, and every caller reduces sequentially over that order, so results
//! are bit-identical across modes and thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving input order in the output.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
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

/// Map `f` over the index range `0..len`, preserving index order.
pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}
