//! Deterministic parallel reductions.
//!
//! Floating sums are computed as fixed-size block sums (each block folded
//! sequentially) combined in block order, so the result is bit-identical
//! for every worker count, including one.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};

const BLOCK: usize = 4096;

pub fn det_sum<V>(values: &[V]) -> V
where
    V: Copy + Send + Sync + Zero + std::ops::Add<Output = V>,
{
    values
        .par_chunks(BLOCK)
        .map(|chunk| chunk.iter().fold(V::zero(), |acc, &v| acc + v))
        .collect::<Vec<V>>()
        .into_iter()
        .fold(V::zero(), |acc, v| acc + v)
}

/// Thread pool sized by the worker option (`None` = rayon default).
pub fn build_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(Error::Argument("worker count must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Argument(format!("thread pool: {e}")))
}
