//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon;
//! without it (or with [`Exec::Sequential`]) they run on the calling thread.
//!
//! Every reduction used with these helpers is exact rational addition, so the
//! result does not depend on how work is split.

/// Execution strategy for batch kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Below this many items the parallel path is not worth the scheduling cost.
pub const MIN_PARALLEL_LEN: usize = 64;

/// Ordered map over a slice.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Ordered map over `0..n`.
pub fn map_range<U, F>(exec: Exec, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Folds chunks of `items` into accumulators and merges them.
pub fn fold_chunks<T, A, Init, Fold, Merge>(
    exec: Exec,
    items: &[T],
    init: Init,
    fold: Fold,
    merge: Merge,
) -> A
where
    T: Sync,
    A: Send,
    Init: Fn() -> A + Sync + Send,
    Fold: Fn(A, &T) -> A + Sync + Send,
    Merge: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel if items.len() >= MIN_PARALLEL_LEN => {
            use rayon::prelude::*;
            items.par_iter().fold(&init, &fold).reduce(&init, &merge)
        }
        _ => items.iter().fold(init(), fold),
    }
}
