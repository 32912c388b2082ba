//! Data-parallel helpers. With the `parallel` feature (default) work is spread over
//! a rayon pool; without it, or with [`Exec::Sequential`], everything runs in order.
//! Results are always returned in input order, so output never depends on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn map<T, R, G>(self, items: &[T], g: G) -> Vec<R>
    where
        T: Sync,
        R: Send,
        G: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(g).collect(),
            _ => items.iter().map(g).collect(),
        }
    }

    /// `g(0), ..., g(n - 1)`.
    pub fn map_range<R, G>(self, n: usize, g: G) -> Vec<R>
    where
        R: Send,
        G: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(g).collect(),
            _ => (0..n).map(g).collect(),
        }
    }
}

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Process-wide execution mode used by the library's internal loops.
pub fn set_default(exec: Exec) {
    SEQUENTIAL.store(exec == Exec::Sequential, Ordering::Relaxed);
}

pub fn default_exec() -> Exec {
    if SEQUENTIAL.load(Ordering::Relaxed) {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

/// [`Exec::map`] with the process-wide mode.
pub fn map<T, R, G>(items: &[T], g: G) -> Vec<R>
where
    T: Sync,
    R: Send,
    G: Fn(&T) -> R + Sync + Send,
{
    default_exec().map(items, g)
}

/// [`Exec::map_range`] with the process-wide mode.
pub fn map_range<R, G>(n: usize, g: G) -> Vec<R>
where
    R: Send,
    G: Fn(usize) -> R + Sync + Send,
{
    default_exec().map_range(n, g)
}

/// Configures the global pool size once; later calls are ignored.
/// Without the `parallel` feature this is a no-op.
pub fn init_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}
