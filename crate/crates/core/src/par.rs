//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon pool; without it every mode runs sequentially. All helpers return
//! results in input order so callers stay deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Map over `0..n`.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Result for the smallest index whose closure returns `Some`.
    pub fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).find_map_first(|r| r),
            _ => items.iter().find_map(f),
        }
    }

    /// Runs `f` inside a pool of `workers` threads when parallel; otherwise
    /// calls it directly.
    pub fn with_workers<R: Send>(self, workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
        match (self, workers) {
            #[cfg(feature = "parallel")]
            (Exec::Parallel, Some(w)) if w > 0 => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            _ => f(),
        }
    }
}
