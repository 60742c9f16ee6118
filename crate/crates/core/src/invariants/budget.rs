use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits for one exponential solver call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverBudget {
    /// Maximum number of search-tree nodes.
    pub node_limit: Option<u64>,
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
}

impl SolverBudget {
    pub const UNLIMITED: SolverBudget = SolverBudget {
        node_limit: None,
        time_limit: None,
    };

    pub fn nodes(limit: u64) -> Self {
        SolverBudget {
            node_limit: Some(limit),
            time_limit: None,
        }
    }

    pub fn seconds(secs: f64) -> Self {
        SolverBudget {
            node_limit: None,
            time_limit: Some(secs),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_limit == Some(0) {
            return Err(Error::input("node limit must be positive"));
        }
        if let Some(t) = self.time_limit {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::input("time limit must be a positive number of seconds"));
            }
        }
        Ok(())
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            nodes: 0,
            limit: self.node_limit,
            // Instant is only touched when a time limit is set (it panics on some wasm targets).
            deadline: self
                .time_limit
                .map(|t| Instant::now() + Duration::from_secs_f64(t)),
        }
    }
}

/// Node counter shared by one solver run.
#[derive(Debug)]
pub(crate) struct Meter {
    pub nodes: u64,
    limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Meter {
    /// Count a node; `true` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(l) = self.limit {
            if self.nodes > l {
                return true;
            }
        }
        if let Some(d) = self.deadline {
            if self.nodes & 1023 == 0 && Instant::now() >= d {
                return true;
            }
        }
        false
    }

    pub fn exhausted(&self, lower: usize, upper: usize) -> Error {
        Error::Budget {
            nodes: self.nodes,
            lower,
            upper,
        }
    }
}
