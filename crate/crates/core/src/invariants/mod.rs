//! Exact matching invariants and the vertex conditions (*1), (*2).

mod brute;
mod budget;
pub(crate) mod clique;
mod conditions;
mod independence;
mod matching;
mod minimal;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use brute::{brute_force_invariants, BRUTE_FORCE_MAX_EDGES};
pub use budget::SolverBudget;
pub use conditions::{satisfies_star1, satisfies_star2};
pub use independence::{
    independence_number, induced_matching_number, maximum_independent_set,
    maximum_induced_matching,
};
pub use matching::{has_perfect_matching, matching_number, maximum_matching};
pub use minimal::{
    enumerate_maximal_matchings, min_maximal_matching_number, minimum_maximal_matching,
    MaximalMatchings,
};

/// `(p, q, r) = (ind-match, min-match, match)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantTriple {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl InvariantTriple {
    pub fn new(p: usize, q: usize, r: usize) -> Self {
        InvariantTriple { p, q, r }
    }

    /// `1 <= p <= q <= r <= 2q`, the range realised by graphs with an edge.
    pub fn is_feasible(&self) -> bool {
        1 <= self.p && self.p <= self.q && self.q <= self.r && self.r <= 2 * self.q
    }

    pub fn require_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "{self} violates 1 <= p <= q <= r <= 2q"
            )))
        }
    }
}

impl fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// All three invariants of a graph with at least one edge; the budget applies
/// to each exponential solver separately.
pub fn triple(g: &Graph, budget: &SolverBudget) -> Result<InvariantTriple> {
    if g.edge_count() == 0 {
        return Err(Error::input("the invariant triple is undefined for edgeless graphs"));
    }
    let t = InvariantTriple {
        p: induced_matching_number(g, budget)?,
        q: min_maximal_matching_number(g, budget)?,
        r: matching_number(g),
    };
    if !t.is_feasible() || 2 * t.r > g.n() {
        return Err(Error::Internal(format!(
            "solvers returned {t} on a graph with {} vertices",
            g.n()
        )));
    }
    Ok(t)
}
