//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on the rayon pool unless the
//! current thread is inside [`sequential`]. Without the feature everything runs
//! on the calling thread.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQ: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with all helpers forced onto the calling thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let old = FORCE_SEQ.with(|c| c.replace(true));
    let out = f();
    FORCE_SEQ.with(|c| c.set(old));
    out
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQ.with(Cell::get)
}

/// `items.map(f)` preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(|t| sequential(|| f(t))).collect();
    }
    items.iter().map(f).collect()
}

/// `(0..n).map(f)` preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && n > 1 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(|i| sequential(|| f(i))).collect();
    }
    (0..n).map(f).collect()
}

/// Folds mapped values with an associative `combine`.
pub fn map_reduce<T, R, F, C>(items: &[T], identity: impl Fn() -> R + Sync + Send, f: F, combine: C) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items
            .par_iter()
            .map(|t| sequential(|| f(t)))
            .reduce(&identity, &combine);
    }
    items.iter().map(f).fold(identity(), combine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_results_both_ways() {
        let v: Vec<u64> = (0..1000).collect();
        let a = map(&v, |x| x * x);
        let b = sequential(|| map(&v, |x| x * x));
        assert_eq!(a, b);
        let s = map_reduce(&v, || 0u64, |x| *x, |a, b| a + b);
        assert_eq!(s, 499_500);
        assert!(sequential(|| !is_parallel()));
    }
}
