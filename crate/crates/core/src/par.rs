//! Data-parallel helpers.
//!
//! With the `parallel` feature the helpers fan work out over the rayon pool;
//! without it they run the same closures sequentially. Every caller merges
//! results by commutative reduction (sums, minima, unions), so outputs do not
//! depend on the thread count or the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a kernel should execute. `Auto` follows the crate feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Auto,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Auto
    }
}

/// Number of worker threads the parallel helpers will use.
pub fn num_threads() -> usize {
    #[cfg(feature = "parallel")]
    let n = rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    let n = 1;
    n
}

/// Map `0..count` through `f` and fold the results with `reduce`.
pub fn map_reduce<T, F, R>(exec: Execution, count: usize, identity: T, f: F, reduce: R) -> T
where
    T: Send + Sync + Clone,
    F: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..count)
            .into_par_iter()
            .map(&f)
            .reduce(|| identity.clone(), &reduce);
    }
    let _ = exec;
    (0..count).map(f).fold(identity, reduce)
}

/// Map every item of a slice, preserving order.
pub fn map_collect<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(&f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
