//! Independent sets and induced matchings, both as maximum cliques of a complement.

use super::budget::SolverBudget;
use super::clique::{lex_least_max_clique, max_clique, BitMatrix};
use super::matching::matching_number;
use crate::error::Result;
use crate::graph::{Edge, Graph, Matching, VertexSet};

fn complement_of(g: &Graph) -> BitMatrix {
    let mut m = BitMatrix::new(g.n());
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                m.set_edge(u, v);
            }
        }
    }
    m
}

/// Edges `e`, `f` are compatible in an induced matching iff they are disjoint
/// and no edge of `g` joins them. The returned matrix joins compatible pairs.
fn compatibility(g: &Graph) -> (BitMatrix, Vec<Edge>) {
    let edges = g.edges();
    let reach: Vec<u64> = edges
        .iter()
        .map(|&(a, b)| g.adjacency()[a] | g.adjacency()[b] | 1 << a | 1 << b)
        .collect();
    let mut m = BitMatrix::new(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            if reach[i] & (1 << c | 1 << d) == 0 {
                m.set_edge(i, j);
            }
        }
    }
    (m, edges)
}

/// `α(G)`.
pub fn independence_number(g: &Graph, budget: &SolverBudget) -> Result<usize> {
    budget.validate()?;
    let c = complement_of(g);
    let mut meter = budget.meter();
    max_clique(&c, &c.full_set(), &mut meter, usize::MAX)
        .map(|(k, _)| k)
        .map_err(|best| meter.exhausted(best, g.n()))
}

/// The lexicographically least maximum independent set.
pub fn maximum_independent_set(g: &Graph, budget: &SolverBudget) -> Result<VertexSet> {
    budget.validate()?;
    let c = complement_of(g);
    let mut meter = budget.meter();
    lex_least_max_clique(&c, &mut meter)
        .map(VertexSet::from_vertices)
        .map_err(|best| meter.exhausted(best, g.n()))
}

/// `ν_in(G)`, the size of a maximum induced matching.
pub fn induced_matching_number(g: &Graph, budget: &SolverBudget) -> Result<usize> {
    budget.validate()?;
    let (c, _) = compatibility(g);
    let mut meter = budget.meter();
    max_clique(&c, &c.full_set(), &mut meter, usize::MAX)
        .map(|(k, _)| k)
        .map_err(|best| meter.exhausted(best, matching_number(g)))
}

/// The lexicographically least maximum induced matching.
pub fn maximum_induced_matching(g: &Graph, budget: &SolverBudget) -> Result<Matching> {
    budget.validate()?;
    let (c, edges) = compatibility(g);
    let mut meter = budget.meter();
    // edge indices follow lexicographic edge order, so the least index set is the least matching
    lex_least_max_clique(&c, &mut meter)
        .map(|ix| Matching::new(ix.into_iter().map(|i| edges[i])))
        .map_err(|best| meter.exhausted(best, matching_number(g)))
}
