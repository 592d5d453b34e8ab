//! Data-parallel driver for index-range enumerations.
//!
//! Work is split into contiguous index chunks; each chunk is folded into a
//! partial result and partials are merged in chunk order. With the `parallel`
//! feature the chunks run on the rayon pool, otherwise (or with
//! [`Execution::Sequential`]) they run in a plain loop. Both paths produce
//! identical results for associative merges.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How enumeration-backed operations schedule their work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

const MIN_CHUNK: u64 = 4096;

fn chunks(total: u64, exec: Execution) -> Vec<(u64, u64)> {
    if total == 0 {
        return Vec::new();
    }
    let size = if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        let workers = rayon::current_num_threads() as u64;
        #[cfg(not(feature = "parallel"))]
        let workers = 1u64;
        (total / (workers * 8)).max(MIN_CHUNK)
    } else {
        total
    };
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + size).min(total);
        out.push((start, end));
        start = end;
    }
    out
}

/// Folds `[0, total)` chunk by chunk and merges the partials in order.
pub(crate) fn fold_range<T, F, M>(exec: Execution, total: u64, fold: F, merge: M) -> Option<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let parts = chunks(total, exec);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return parts
            .into_par_iter()
            .map(|(s, e)| fold(s, e))
            .reduce_with(|a, b| merge(a, b));
    }
    parts.into_iter().map(|(s, e)| fold(s, e)).reduce(merge)
}

/// Maps every item, preserving order.
pub(crate) fn map_items<I, T, F>(exec: Execution, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}
