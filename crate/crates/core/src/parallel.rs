//! Thin switch between rayon and plain iteration.
//!
//! Every call site computes the same values either way; only scheduling
//! differs. Without the `parallel` feature, [`Parallelism::Parallel`] quietly
//! runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Applies `f(row_index, row)` to every `width`-sized chunk of `data`.
pub(crate) fn for_each_row<F>(data: &mut [u32], width: usize, par: Parallelism, worth_it: bool, f: F)
where
    F: Fn(usize, &mut [u32]) + Sync + Send,
{
    if width == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if par.is_parallel() && worth_it {
        data.par_chunks_mut(width).enumerate().for_each(|(i, row)| f(i, row));
        return;
    }
    let _ = (par, worth_it);
    data.chunks_mut(width).enumerate().for_each(|(i, row)| f(i, row));
}

/// Order-preserving map.
pub(crate) fn map<T, U, F>(items: &[T], par: Parallelism, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}
