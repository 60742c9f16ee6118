//! Isomorph-free generation of connected graphs by canonical vertex augmentation.
//!
//! Every connected graph on `k + 1` vertices arises from a connected graph on
//! `k` vertices by adding a vertex joined to a nonempty neighbour set. A child
//! is kept only when its new vertex is the canonical one to delete: a non-cut
//! vertex with the largest cheap invariant, ties broken by the largest marked
//! canonical code (equal codes mean the same automorphism orbit). Then every
//! class has exactly one accepted parent class, and isomorphic children of the
//! same parent are merged by their marked codes.

use std::collections::HashSet;

use crate::canon::{marked_code, refines_to_discrete};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

/// Orders up to which unrestricted generation is supported.
pub const MAX_ORDER: usize = 10;
/// Orders up to which trees are supported.
pub const MAX_TREE_ORDER: usize = 18;

/// Whether generating order `n` with at most `max_edges` edges is inside the
/// supported envelope. Sparse searches reach further than dense ones.
pub fn within_envelope(n: usize, max_edges: Option<usize>) -> bool {
    if n <= MAX_ORDER {
        return true;
    }
    match max_edges {
        Some(m) if m < n => n <= MAX_TREE_ORDER,
        Some(m) if m <= n + 1 => n <= 14,
        Some(m) if m <= n + 3 => n <= 12,
        _ => false,
    }
}

pub(crate) fn check_envelope(n: usize, max_edges: Option<usize>) -> Result<()> {
    if n == 0 {
        return Err(Error::input("graphs must have at least one vertex"));
    }
    if !within_envelope(n, max_edges) {
        return Err(Error::input(format!(
            "order {n} with edge cap {max_edges:?} is outside the enumeration envelope \
             (n <= {MAX_ORDER}; sparser caps reach further, trees up to {MAX_TREE_ORDER})"
        )));
    }
    Ok(())
}

/// Cheap isomorphism invariant of a vertex: degree, neighbour degree sum,
/// triangles through it, and the size of its second neighbourhood.
fn vertex_invariant(adj: &[u64], v: usize) -> u64 {
    let nv = adj[v];
    let mut deg_sum = 0u64;
    let mut tri = 0u64;
    let mut second = 0u64;
    for a in Bits(nv) {
        deg_sum += adj[a].count_ones() as u64;
        tri += (adj[a] & nv).count_ones() as u64;
        second |= adj[a];
    }
    second &= !(nv | 1 << v);
    (nv.count_ones() as u64) << 48 | deg_sum << 32 | (tri / 2) << 16 | second.count_ones() as u64
}

/// Marked code of the new vertex if the child is accepted.
fn accept(child: &Graph, v: usize) -> Option<Vec<u64>> {
    let adj = child.adjacency();
    let cand = child.non_cut_vertices();
    let mine = vertex_invariant(adj, v);
    let mut ties = Vec::new();
    for w in Bits(cand & !(1 << v)) {
        let x = vertex_invariant(adj, w);
        if x > mine {
            return None;
        }
        if x == mine {
            ties.push(w);
        }
    }
    let code = marked_code(child, v);
    for w in ties {
        if marked_code(child, w) > code {
            return None;
        }
    }
    Some(code)
}

/// Accepted children of `parent` (on `k` vertices) that can still be grown to
/// order `n` within `max_edges`, in a fixed order.
pub(crate) fn children(parent: &Graph, n: usize, max_edges: Option<usize>) -> Vec<Graph> {
    let k = parent.n();
    debug_assert!(k < n);
    let max_set = match max_edges {
        Some(m) => {
            // each later vertex needs at least one more edge
            let spare = m as i64 - parent.edge_count() as i64 - (n - k - 1) as i64;
            if spare < 1 {
                return Vec::new();
            }
            (spare as usize).min(k)
        }
        None => k,
    };
    let rigid = refines_to_discrete(parent);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for size in 1..=max_set {
        // Gosper's hack over k-bit masks with `size` bits
        let mut s: u64 = (1u64 << size) - 1;
        while s < 1u64 << k {
            let child = parent.extended(s);
            if let Some(code) = accept(&child, k) {
                if rigid || seen.insert(code) {
                    out.push(child);
                }
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    out
}

/// All nodes of the generation tree at order `level`.
pub(crate) fn frontier(level: usize, n: usize, max_edges: Option<usize>) -> Vec<Graph> {
    let mut layer = vec![Graph::empty(1).expect("one vertex")];
    for _ in 1..level {
        layer = layer
            .iter()
            .flat_map(|g| children(g, n, max_edges))
            .collect();
    }
    layer
}

/// Depth-first walk below `root`, calling `visit` on every graph of order `n`.
pub(crate) fn walk<E>(
    root: &Graph,
    n: usize,
    max_edges: Option<usize>,
    visit: &mut impl FnMut(&Graph) -> std::result::Result<(), E>,
) -> std::result::Result<(), E> {
    if root.n() == n {
        if max_edges.is_none_or(|m| root.edge_count() <= m) {
            visit(root)?;
        }
        return Ok(());
    }
    for c in children(root, n, max_edges) {
        walk(&c, n, max_edges, visit)?;
    }
    Ok(())
}

/// Lazy stream of connected graphs of order `n`, one per isomorphism class,
/// optionally with at most `max_edges` edges.
pub struct ConnectedGraphs {
    n: usize,
    max_edges: Option<usize>,
    stack: Vec<std::vec::IntoIter<Graph>>,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let top = self.stack.last_mut()?;
            match top.next() {
                None => {
                    self.stack.pop();
                }
                Some(g) if g.n() == self.n => {
                    if self.max_edges.is_none_or(|m| g.edge_count() <= m) {
                        return Some(g);
                    }
                }
                Some(g) => {
                    let c = children(&g, self.n, self.max_edges);
                    self.stack.push(c.into_iter());
                }
            }
        }
    }
}

pub fn enumerate_connected_graphs(n: usize, max_edges: Option<usize>) -> Result<ConnectedGraphs> {
    check_envelope(n, max_edges)?;
    Ok(ConnectedGraphs {
        n,
        max_edges,
        stack: vec![vec![Graph::empty(1)?].into_iter()],
    })
}

/// Trees of order `n`, one per isomorphism class.
pub fn enumerate_trees(n: usize) -> Result<ConnectedGraphs> {
    if n == 0 || n > MAX_TREE_ORDER {
        return Err(Error::input(format!("tree order must be in 1..={MAX_TREE_ORDER}")));
    }
    enumerate_connected_graphs(n, Some(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let want = [1, 1, 2, 6, 21, 112, 853];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(enumerate_connected_graphs(i + 1, None).unwrap().count(), w, "n={}", i + 1);
        }
        let trees = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &w) in trees.iter().enumerate() {
            assert_eq!(enumerate_trees(i + 1).unwrap().count(), w, "n={}", i + 1);
        }
    }

    #[test]
    fn edge_cap_filters() {
        // connected graphs on 5 vertices with at most 5 edges: 3 trees + 5 unicyclic
        assert_eq!(enumerate_connected_graphs(5, Some(5)).unwrap().count(), 8);
    }

    #[test]
    fn envelope() {
        assert!(enumerate_connected_graphs(11, None).is_err());
        assert!(enumerate_connected_graphs(0, None).is_err());
        assert!(enumerate_trees(19).is_err());
        assert!(within_envelope(14, Some(15)));
    }
}
