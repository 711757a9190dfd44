//! Order-preserving data parallelism with a sequential fallback.
//!
//! With the `parallel` feature the maps run on the rayon pool; without it they
//! are plain iterator maps. Results are always returned in input order, so
//! reports do not depend on scheduling.

/// Environment variable that caps the number of worker threads.
pub const WORKERS_ENV: &str = "TODA_WORKERS";

#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Worker count requested through [`WORKERS_ENV`], if any.
pub fn requested_workers() -> Option<usize> {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs `f` on a pool with `workers` threads (the global pool when `None`).
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R: Send>(_workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// True when this build runs maps in parallel.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = with_workers(Some(3), || par_map(&xs, |x| x * x));
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
