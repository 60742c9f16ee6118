use super::budget::SolverBudget;
use super::minimal::{enumerate_maximal_matchings, min_maximal_matching_number};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn check(g: &Graph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

/// Condition (*1): `v` has a neighbour of degree one.
pub fn satisfies_star1(g: &Graph, v: usize) -> Result<bool> {
    check(g, v)?;
    let adj = g.adjacency();
    Ok(crate::graph::Bits(adj[v]).any(|w| adj[w].count_ones() == 1))
}

/// Condition (*2): every minimum maximal matching covers `v`.
pub fn satisfies_star2(g: &Graph, v: usize, budget: &SolverBudget) -> Result<bool> {
    check(g, v)?;
    let q = min_maximal_matching_number(g, budget)?;
    Ok(enumerate_maximal_matchings(g, Some(q)).all(|m| m.vertices().contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_endpoint_fails_star2() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = SolverBudget::UNLIMITED;
        assert!(satisfies_star1(&p3, 1).unwrap());
        assert!(!satisfies_star1(&p3, 0).unwrap());
        assert!(!satisfies_star2(&p3, 0, &b).unwrap());
        assert!(satisfies_star2(&p3, 1, &b).unwrap());
        assert!(satisfies_star1(&p3, 3).is_err());
    }
}
