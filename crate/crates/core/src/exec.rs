//! Execution strategy for the data-parallel loops.
//!
//! Every reduction in the engine is exact, so the strategy only changes
//! wall-clock time, never a result.

/// How batch work (partition vectors, curve classes) is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Work-stealing over the current rayon pool. Without the `parallel`
    /// feature this behaves exactly like `Sequential`.
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

impl Exec {
    /// Map `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Map then fold with an associative operation. The sequential path
    /// folds left to right; the parallel path folds a tree. With exact
    /// arithmetic both give the same value.
    pub fn map_reduce<T, U, F, R>(self, items: &[T], identity: U, f: F, reduce: R) -> U
    where
        T: Sync,
        U: Send + Sync + Clone,
        F: Fn(&T) -> U + Sync + Send,
        R: Fn(U, U) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items
                    .par_iter()
                    .map(f)
                    .reduce(|| identity.clone(), &reduce)
            }
            _ => items.iter().map(f).fold(identity, reduce),
        }
    }
}
