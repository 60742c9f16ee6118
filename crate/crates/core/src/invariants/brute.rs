//! Definitional oracle: classify every edge subset. Only for cross-checking the solvers.

use super::InvariantTriple;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const BRUTE_FORCE_MAX_EDGES: usize = 24;

/// `(ind-match, min-match, match)` by enumerating all `2^|E|` edge subsets.
/// Edgeless graphs give `(0, 0, 0)`.
pub fn brute_force_invariants(g: &Graph) -> Result<InvariantTriple> {
    let edges = g.edges();
    if edges.len() > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::input(format!(
            "brute force needs at most {BRUTE_FORCE_MAX_EDGES} edges, got {}",
            edges.len()
        )));
    }
    let m = edges.len();
    let (mut ind, mut min, mut max) = (0, usize::MAX, 0);
    'subsets: for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        let mut covered = 0u64;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if covered >> u & 1 == 1 || covered >> v & 1 == 1 {
                    continue 'subsets;
                }
                covered |= 1 << u | 1 << v;
            }
        }
        max = max.max(size);
        // maximal: no edge outside the subset could be added
        let maximal = (0..m).all(|j| {
            let (u, v) = edges[j];
            mask >> j & 1 == 1 || covered >> u & 1 == 1 || covered >> v & 1 == 1
        });
        if maximal {
            min = min.min(size);
        }
        // induced: no edge of the graph meets two members
        let induced = edges.iter().all(|&(u, v)| {
            let touched = (0..m).filter(|&i| {
                let (a, b) = edges[i];
                mask >> i & 1 == 1 && (a == u || a == v || b == u || b == v)
            });
            touched.count() <= 1
        });
        if induced {
            ind = ind.max(size);
        }
    }
    Ok(InvariantTriple { p: ind, q: min, r: max })
}
