//! Execution strategy for the data-parallel inner loops.
//!
//! Without the `parallel` feature, [`Exec::Parallel`] silently runs the
//! sequential path.

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Map every item and sum the results. Integer addition is associative,
    /// so the result does not depend on the strategy.
    pub fn sum<T, F>(self, items: &[T], f: F) -> BigInt
    where
        T: Sync,
        F: Fn(&T) -> BigInt + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items
                    .par_iter()
                    .map(&f)
                    .reduce(BigInt::zero, |a, b| a + b)
            }
            _ => items.iter().map(f).fold(BigInt::zero(), |a, b| a + b),
        }
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}
