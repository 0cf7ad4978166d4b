//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these fan out over a rayon pool;
//! without it they run sequentially with identical semantics. Results are
//! always in index order.

#[cfg(feature = "parallel")]
pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Request a global worker count. Returns false when the pool was already
/// initialized or the build is sequential.
#[cfg(feature = "parallel")]
pub fn configure_threads(count: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(count)
        .build_global()
        .is_ok()
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_count: usize) -> bool {
    false
}
