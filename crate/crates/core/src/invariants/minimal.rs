//! Minimum maximal matchings (edge domination) and enumeration of maximal matchings.
//!
//! Both searches branch on the lowest undecided vertex `u`: match it to each
//! undecided neighbour in increasing order, then (if allowed) leave it exposed.
//! Every vertex below `u` is already decided, so this visits matchings in
//! lexicographic order of their sorted edge lists, include-before-exclude.
//! A vertex may stay exposed only while it has no exposed neighbour, which is
//! exactly the "unmatched vertices are independent" characterisation of maximality.

use super::budget::{Meter, SolverBudget};
use super::matching::matching_number;
use crate::error::Result;
use crate::graph::{Bits, Edge, Graph, Matching};

#[inline]
fn low(x: u64) -> usize {
    x.trailing_zeros() as usize
}

/// Greedy matching size inside `set`.
fn greedy_matching(adj: &[u64], mut set: u64) -> usize {
    let mut k = 0;
    while set != 0 {
        let v = low(set);
        set &= set - 1;
        let c = adj[v] & set;
        if c != 0 {
            set &= !(1 << low(c));
            k += 1;
        }
    }
    k
}

/// Number of cliques in a greedy clique cover of `set`; bounds α of the induced subgraph.
fn greedy_clique_cover(adj: &[u64], mut set: u64) -> usize {
    let mut k = 0;
    while set != 0 {
        let v = low(set);
        set &= set - 1;
        let mut cand = adj[v] & set;
        while cand != 0 {
            let w = low(cand);
            set &= !(1 << w);
            cand &= adj[w] & !(1 << w);
        }
        k += 1;
    }
    k
}

/// Lower bound on the edges still needed to complete a maximal matching when
/// `free` is undecided and `exposed` is fixed unmatched.
fn lower_bound(adj: &[u64], free: u64, exposed: u64) -> usize {
    let mut must = 0u64;
    for v in Bits(exposed) {
        must |= adj[v];
    }
    must &= free;
    let rest = free & !must;
    // matched vertices of `rest` form a vertex cover of G[rest]
    let by_cover = must.count_ones() as usize + greedy_matching(adj, rest);
    // exposed vertices of `free` lie in `rest` and are independent
    let by_alpha = (free.count_ones() as usize).saturating_sub(greedy_clique_cover(adj, rest));
    by_cover.max(by_alpha).div_ceil(2)
}

struct MinSearch<'a> {
    adj: &'a [u64],
    meter: Meter,
    best: usize,
    witness: Option<Vec<Edge>>,
    chosen: Vec<Edge>,
    aborted: bool,
}

impl MinSearch<'_> {
    fn dfs(&mut self, free: u64, exposed: u64) {
        if self.aborted {
            return;
        }
        if self.meter.tick() {
            self.aborted = true;
            return;
        }
        if free == 0 {
            if self.chosen.len() < self.best {
                self.best = self.chosen.len();
                self.witness = Some(self.chosen.clone());
            }
            return;
        }
        if self.chosen.len() + lower_bound(self.adj, free, exposed) >= self.best {
            return;
        }
        let u = low(free);
        let rest = free & !(1 << u);
        for w in Bits(self.adj[u] & rest) {
            self.chosen.push((u, w));
            self.dfs(rest & !(1 << w), exposed);
            self.chosen.pop();
        }
        if self.adj[u] & exposed == 0 {
            self.dfs(rest, exposed | 1 << u);
        }
    }
}

/// The lexicographically least minimum maximal matching.
pub fn minimum_maximal_matching(g: &Graph, budget: &SolverBudget) -> Result<Matching> {
    budget.validate()?;
    let adj = g.adjacency();
    let all = g.vertices().0;
    let nu = matching_number(g);
    let mut s = MinSearch {
        adj,
        meter: budget.meter(),
        best: nu + 1,
        witness: None,
        chosen: Vec::new(),
        aborted: false,
    };
    s.dfs(all, 0);
    match s.witness {
        Some(w) if !s.aborted => Ok(Matching::new(w)),
        _ => {
            let upper = s.best.min(nu);
            Err(s.meter.exhausted(lower_bound(adj, all, 0).min(upper), upper))
        }
    }
}

/// `min-match(G)`, the minimum size of a maximal matching.
pub fn min_maximal_matching_number(g: &Graph, budget: &SolverBudget) -> Result<usize> {
    minimum_maximal_matching(g, budget).map(|m| m.len())
}

struct Frame {
    len: usize,
    u: usize,
    free: u64,
    exposed: u64,
    partners: u64,
    may_expose: bool,
}

/// Lazy stream of maximal matchings in lexicographic order.
pub struct MaximalMatchings<'a> {
    adj: &'a [u64],
    size: Option<usize>,
    chosen: Vec<Edge>,
    stack: Vec<Frame>,
    pending: Option<(u64, u64)>,
}

impl<'a> MaximalMatchings<'a> {
    fn new(g: &'a Graph, size: Option<usize>) -> Self {
        MaximalMatchings {
            adj: g.adjacency(),
            size,
            chosen: Vec::new(),
            stack: Vec::new(),
            pending: Some((g.vertices().0, 0)),
        }
    }

    /// Visit the state `(free, exposed)` reached with the current `chosen`.
    fn enter(&mut self, free: u64, exposed: u64) -> Option<Matching> {
        if let Some(k) = self.size {
            if self.chosen.len() + lower_bound(self.adj, free, exposed) > k {
                return None;
            }
            if free != 0 && self.chosen.len() == k {
                // no more edges allowed: the rest must be exposable
                let mut seen = exposed;
                for v in Bits(free) {
                    if self.adj[v] & seen != 0 {
                        return None;
                    }
                    seen |= 1 << v;
                }
                return Some(Matching::new(self.chosen.iter().copied()));
            }
        }
        if free == 0 {
            if self.size.is_none_or(|k| k == self.chosen.len()) {
                return Some(Matching::new(self.chosen.iter().copied()));
            }
            return None;
        }
        let u = low(free);
        let rest = free & !(1 << u);
        self.stack.push(Frame {
            len: self.chosen.len(),
            u,
            free: rest,
            exposed,
            partners: self.adj[u] & rest,
            may_expose: self.adj[u] & exposed == 0,
        });
        None
    }
}

impl Iterator for MaximalMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if let Some((free, exposed)) = self.pending.take() {
            if let Some(m) = self.enter(free, exposed) {
                return Some(m);
            }
        }
        loop {
            let top = self.stack.last_mut()?;
            let (free, exposed) = if top.partners != 0 {
                let w = low(top.partners);
                top.partners &= top.partners - 1;
                let (u, len, free, exposed) = (top.u, top.len, top.free, top.exposed);
                self.chosen.truncate(len);
                self.chosen.push((u, w));
                (free & !(1 << w), exposed)
            } else if top.may_expose {
                top.may_expose = false;
                let (u, len, free, exposed) = (top.u, top.len, top.free, top.exposed);
                self.chosen.truncate(len);
                (free, exposed | 1 << u)
            } else {
                self.stack.pop();
                continue;
            };
            if let Some(m) = self.enter(free, exposed) {
                return Some(m);
            }
        }
    }
}

/// Every maximal matching of `g` (or only those with `size` edges), each once,
/// in lexicographic order.
pub fn enumerate_maximal_matchings(g: &Graph, size: Option<usize>) -> MaximalMatchings<'_> {
    MaximalMatchings::new(g, size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn small_cases() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let b = SolverBudget::UNLIMITED;
        assert_eq!(min_maximal_matching_number(&c5, &b).unwrap(), 2);
        assert_eq!(enumerate_maximal_matchings(&c5, Some(2)).count(), 5);
        let p3 = path(3);
        let all: Vec<_> = enumerate_maximal_matchings(&p3, None).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].edges(), &[(0, 1)]);
        assert_eq!(all[1].edges(), &[(1, 2)]);
        assert_eq!(minimum_maximal_matching(&path(6), &b).unwrap().edges(), &[(0, 1), (3, 4)]);
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(enumerate_maximal_matchings(&k1, None).count(), 1);
    }

    #[test]
    fn size_filter_matches_full_stream() {
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 7), (2, 6), (1, 5)],
        )
        .unwrap();
        let all: Vec<_> = enumerate_maximal_matchings(&g, None).collect();
        for m in &all {
            assert!(g.is_maximal_matching(m).unwrap());
        }
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.edges().cmp(b.edges()));
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        for k in 0..5 {
            let want: Vec<_> = all.iter().filter(|m| m.len() == k).cloned().collect();
            let got: Vec<_> = enumerate_maximal_matchings(&g, Some(k)).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn budget_reports_bracket() {
        let mut e = Vec::new();
        for i in 0..40 {
            e.push((i, (i + 1) % 40));
            e.push((i, (i + 7) % 40));
        }
        let g = Graph::from_edges(40, &e).unwrap();
        match minimum_maximal_matching(&g, &SolverBudget::nodes(5)) {
            Err(crate::Error::Budget { lower, upper, .. }) => assert!(lower <= upper),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
