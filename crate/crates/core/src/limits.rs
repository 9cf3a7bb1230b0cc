use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size caps and step budget shared by every exponential search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest graph for clique / independence number search.
    pub max_clique_n: usize,
    /// Largest graph handed to the exact treewidth solver.
    pub max_treewidth_n: usize,
    /// Largest graph for the separation number (doubly exponential).
    pub max_separation_number_n: usize,
    /// Largest graph for exhaustive balanced-separator search.
    pub max_separator_n: usize,
    /// Largest pattern for induced-subgraph search.
    pub max_pattern_n: usize,
    /// Largest host graph for any bitmask-based search.
    pub max_host_n: usize,
    /// Steps allowed per search call before it reports exhaustion.
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_clique_n: 64,
            max_treewidth_n: 64,
            max_separation_number_n: 12,
            max_separator_n: 28,
            max_pattern_n: 24,
            max_host_n: 128,
            max_steps: 200_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }

    pub(crate) fn budget(&self) -> Budget {
        Budget::new(self.max_steps)
    }
}

/// Deterministic step counter; one per search call.
#[derive(Debug)]
pub struct Budget {
    used: Cell<u64>,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            used: Cell::new(0),
            limit,
        }
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if used > self.limit {
            Err(Error::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}
