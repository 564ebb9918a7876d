//! Execution policy for the data-parallel parts of the library.
//!
//! With the `parallel` feature (on by default) independent work items are
//! spread over rayon's pool. Without it, or with [`Execution::Sequential`],
//! everything runs on the calling thread. Results are identical either way:
//! outputs are always collected in input order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Shared knobs for the expensive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeOptions {
    pub execution: Execution,
    /// Upper bound on the number of faces enumerated for any one complex.
    pub max_faces: usize,
}

pub const DEFAULT_MAX_FACES: usize = 2_000_000;

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { execution: Execution::default(), max_faces: DEFAULT_MAX_FACES }
    }
}

impl ComputeOptions {
    pub fn sequential() -> Self {
        ComputeOptions { execution: Execution::Sequential, ..Self::default() }
    }

    pub fn with_max_faces(self, max_faces: usize) -> Self {
        ComputeOptions { max_faces, ..self }
    }
}

pub(crate) fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub(crate) fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Whether the crate was built with rayon support.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
