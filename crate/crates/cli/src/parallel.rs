//! Bounded worker pool for campaigns.

use std::sync::OnceLock;

use rayon::prelude::*;
use rayon::ThreadPool;

static POOL: OnceLock<ThreadPool> = OnceLock::new();
static JOBS: OnceLock<usize> = OnceLock::new();

/// Fixes the worker count; only the first call has an effect.
pub fn set_jobs(jobs: usize) {
    let _ = JOBS.set(jobs.max(1));
}

fn pool() -> &'static ThreadPool {
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(&jobs) = JOBS.get() {
            builder = builder.num_threads(jobs);
        }
        builder.build().expect("thread pool")
    })
}

/// Maps `f` over `items` on the pool, keeping input order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool().install(|| items.par_iter().map(&f).collect())
}
