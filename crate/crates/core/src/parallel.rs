use rayon::prelude::*;

use crate::error::{Error, Result};

/// `(0..n).map(f)` on a rayon pool; `jobs = None` uses the global pool.
/// The first error wins.
pub fn map_indices<T, F>(n: usize, jobs: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let run = || (0..n).into_par_iter().map(&f).collect::<Result<Vec<T>>>();
    match jobs {
        None => run(),
        Some(0) => Err(Error::InvalidSpec("jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("cannot start {j} worker threads: {e}")))?
            .install(run),
    }
}
