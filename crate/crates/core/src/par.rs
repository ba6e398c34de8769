//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) the loops run on the rayon
//! global pool; without it every strategy runs sequentially. Results are
//! identical either way because every parallel map collects in index order.

/// How a data-parallel loop is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// The strategy the crate uses when the caller does not pick one.
    pub fn preferred() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }

    /// Maps `f` over `0..len`, collecting results in index order.
    ///
    /// Loops shorter than `min_parallel_len` stay sequential.
    pub fn map_indices<R, F>(self, len: usize, min_parallel_len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            if self == Execution::Parallel && len >= min_parallel_len {
                use rayon::prelude::*;
                return (0..len).into_par_iter().map(f).collect();
            }
        }
        let _ = min_parallel_len;
        (0..len).map(f).collect()
    }

    /// Maps `f` over a slice, collecting results in order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            if self == Execution::Parallel {
                use rayon::prelude::*;
                return items.par_iter().map(f).collect();
            }
        }
        items.iter().map(f).collect()
    }
}
