//! Data-parallel map helpers.
//!
//! With the `parallel` feature (default) [`par_map`] runs on the rayon
//! global pool; without it, it is the sequential [`seq_map`]. Output order
//! always matches input order, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn seq_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    seq_map(items, f)
}

/// Fallible variant of [`par_map`]; returns the first error in input order.
pub fn try_par_map<T, R, E, F>(items: Vec<T>, f: F) -> Result<Vec<R>, E>
where
    T: Send,
    R: Send,
    E: Send,
    F: Fn(T) -> Result<R, E> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
