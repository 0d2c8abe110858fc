//! Shared rayon pool, sized by the `MEDIAN_LAB_THREADS` environment variable.

use std::sync::OnceLock;

static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

/// Pool for check and matrix parallelism. `MEDIAN_LAB_THREADS` caps the
/// thread count; unset or invalid values fall back to the rayon default.
pub fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(k) = std::env::var("MEDIAN_LAB_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&k| k >= 1)
        {
            builder = builder.num_threads(k);
        }
        builder.build().expect("thread pool")
    })
}
