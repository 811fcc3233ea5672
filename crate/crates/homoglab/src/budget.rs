use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default node cap for a single search (canonical labeling, clique
/// branch-and-bound, subset-orbit sweep at one k, ...). Generous for
/// everything in the grid; small enough to fail fast on hostile input.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// A node counter shared by the backtracking searches. Exceeding the cap
/// surfaces as [`Error::Budget`], never as a wrong answer. Charging is
/// atomic so read-only queries may run from several threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    context: &'static str,
}

impl Budget {
    pub fn new(limit: u64, context: &'static str) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            context,
        }
    }

    /// A per-operation budget with the default cap, or the cap from the
    /// `HOMOGLAB_BUDGET` environment variable when set.
    pub fn standard(context: &'static str) -> Self {
        let limit = std::env::var("HOMOGLAB_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_NODE_BUDGET);
        Budget::new(limit, context)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn charge(&self, nodes: u64) -> Result<()> {
        let prev = self.used.fetch_add(nodes, Ordering::Relaxed);
        if prev + nodes > self.limit {
            return Err(Error::Budget {
                context: self.context.to_string(),
                limit: self.limit,
            });
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}
