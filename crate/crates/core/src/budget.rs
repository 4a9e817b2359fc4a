use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_POINT_EVALS: u128 = 10_000_000;
pub const DEFAULT_SUBSPACES: u128 = 1_000_000;

/// Explicit limits for exhaustive searches. Exceeding one is an error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_point_evals: u128,
    pub max_subspaces: u128,
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_point_evals: DEFAULT_POINT_EVALS,
            max_subspaces: DEFAULT_SUBSPACES,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchBudget {
    pub fn new(max_point_evals: u128, max_subspaces: u128, workers: usize) -> Result<Self> {
        if max_point_evals == 0 || max_subspaces == 0 || workers == 0 {
            return Err(Error::InvalidInput("budgets and worker count must be positive".into()));
        }
        Ok(SearchBudget { max_point_evals, max_subspaces, workers })
    }

    pub fn check_points(&self, what: &str, required: u128) -> Result<()> {
        if required > self.max_point_evals {
            return Err(Error::BudgetExceeded { what: what.into(), required, budget: self.max_point_evals });
        }
        Ok(())
    }

    pub fn check_subspaces(&self, what: &str, required: u128) -> Result<()> {
        if required > self.max_subspaces {
            return Err(Error::BudgetExceeded { what: what.into(), required, budget: self.max_subspaces });
        }
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

impl SearchBudget {
    /// Runs `op` on a dedicated pool of `workers` threads.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}
