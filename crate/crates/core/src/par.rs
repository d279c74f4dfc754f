//! Shared thread pool.
//!
//! The width comes from `SUBREGULAR_THREADS` when set to a positive integer,
//! otherwise rayon's default. Results are always collected in input order, so
//! parallel and serial runs produce identical output.

use std::sync::OnceLock;

use rayon::prelude::*;

pub const THREADS_VAR: &str = "SUBREGULAR_THREADS";

static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

fn width() -> Option<usize> {
    std::env::var(THREADS_VAR)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
}

pub fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(w) = width() {
            builder = builder.num_threads(w);
        }
        builder.build().expect("thread pool")
    })
}

/// Ordered parallel map.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool().install(|| items.par_iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    #[test]
    fn keeps_order() {
        let xs: Vec<u64> = (0..100).collect();
        let ys = super::map(&xs, |x| x * x);
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
