//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs on
//! the rayon pool; without it every strategy degrades to a plain loop. Output
//! order never depends on the strategy.

use std::ops::Range;

/// Environment variable capping the worker count.
pub const MAX_WORKERS_ENV: &str = "MATROID_MAX_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if is_parallel_available() {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

pub fn is_parallel_available() -> bool {
    cfg!(feature = "parallel")
}

impl Execution {
    /// `f` over `0..count`, results in index order.
    pub fn map_indexed<U, F>(self, count: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..count).into_par_iter().map(f).collect()
            }
            _ => (0..count).map(f).collect(),
        }
    }

    /// Keeps `f(i)` for every `i` in `range` where it is `Some`, in order.
    pub fn filter_map_range<U, F>(self, range: Range<u64>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> Option<U> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().filter_map(f).collect()
            }
            _ => range.filter_map(f).collect(),
        }
    }

    pub fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

/// Reads [`MAX_WORKERS_ENV`] and sizes the global pool accordingly.
///
/// Returns the cap that was applied, `None` when the variable is unset. Must
/// run before the first parallel call; later calls leave the pool unchanged.
pub fn init_workers_from_env() -> Result<Option<usize>, String> {
    let Ok(raw) = std::env::var(MAX_WORKERS_ENV) else {
        return Ok(None);
    };
    let workers: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| format!("{MAX_WORKERS_ENV} must be a positive integer, got `{raw}`"))?;
    #[cfg(feature = "parallel")]
    {
        // an already-initialized pool is not an error for callers
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    Ok(Some(workers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_on_order() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let squares = exec.map_indexed(100, |i| i * i);
            assert_eq!(squares, (0..100).map(|i| i * i).collect::<Vec<_>>());
            let odd = exec.filter_map_range(0..50, |i| (i % 2 == 1).then_some(i));
            assert_eq!(odd, (0..50).filter(|i| i % 2 == 1).collect::<Vec<_>>());
            assert_eq!(exec.map_slice(&[1, 2, 3], |x| x + 1), vec![2, 3, 4]);
        }
    }
}
