//! Execution strategy for the data-parallel loops (lattice sums, z-convolutions,
//! corpus batches).
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon global pool; without it every strategy falls back to the sequential
//! loop, so results never depend on the build.

/// How to run an embarrassingly parallel map-reduce.
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

impl Exec {
    /// Maps `f` over `items`, keeping input order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Send + Sync,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Maps then folds with an associative `combine`; `None` on empty input.
    pub fn map_reduce<T, R, F, C>(self, items: Vec<T>, f: F, combine: C) -> Option<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Send + Sync,
        C: Fn(R, R) -> R + Send + Sync,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).reduce_with(combine)
            }
            _ => items.into_iter().map(f).reduce(combine),
        }
    }
}
