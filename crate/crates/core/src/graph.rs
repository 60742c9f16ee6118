//! Simple undirected graphs on at most 64 vertices.
//!
//! Every adjacency row is a single `u64`, so vertex sets are plain bit masks and
//! most set predicates are a handful of word operations.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// An unordered vertex pair, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

/// A subset of the vertices `0..n` of some host graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1u64 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;

    fn into_iter(self) -> Bits {
        Bits(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of edges of some host graph, kept sorted and normalized.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `V(M)`: all endpoints. Only meaningful for in-range edges.
    pub fn vertices(&self) -> VertexSet {
        VertexSet(
            self.edges
                .iter()
                .filter(|&&(u, v)| u < 64 && v < 64)
                .fold(0, |m, &(u, v)| m | 1 << u | 1 << v),
        )
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges.iter()).finish()
    }
}

/// Immutable simple graph. Build one with [`GraphBuilder`] or [`Graph::from_edges`].
///
/// Vertex labels are display metadata only: equality, hashing and every algorithm
/// ignore them.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Build from raw adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_capacity(n)?;
        let full = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::input(format!("row {v} references vertices >= {n}")));
            }
            if row >> v & 1 == 1 {
                return Err(Error::input(format!("loop at vertex {v}")));
            }
            for u in Bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::input(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(Graph {
            n,
            adj,
            labels: None,
        })
    }

    /// Attach display labels; they must be distinct and one per vertex.
    pub fn with_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n {
            return Err(Error::input(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::input(format!("duplicate label {dup:?}")));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Index of the vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Edges in lexicographic order `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        if s.0 & !full_mask(self.n) != 0 {
            let v = (s.0 & !full_mask(self.n)).trailing_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v] | 1 << v))
    }

    /// No edge has both endpoints in `s`.
    pub fn is_independent(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(Bits(s.0).all(|v| self.adj[v] & s.0 == 0))
    }

    /// Every member is an edge of this graph and members are pairwise disjoint.
    pub fn is_matching(&self, m: &Matching) -> bool {
        let mut used = 0u64;
        for &(u, v) in m.edges() {
            if !self.has_edge(u, v) {
                return false;
            }
            let b = 1u64 << u | 1u64 << v;
            if used & b != 0 {
                return false;
            }
            used |= b;
        }
        true
    }

    fn require_matching(&self, m: &Matching) -> Result<()> {
        if self.is_matching(m) {
            Ok(())
        } else {
            Err(Error::Contract(format!("{m:?} is not a matching of the graph")))
        }
    }

    /// Maximality via the complement test: `V(G) \ V(M)` is independent.
    pub fn is_maximal_matching(&self, m: &Matching) -> Result<bool> {
        self.require_matching(m)?;
        let uncovered = self.vertices().difference(m.vertices());
        self.is_independent(uncovered)
    }

    /// Maximality straight from the definition: no edge outside `M` can be added.
    pub fn is_maximal_matching_by_extension(&self, m: &Matching) -> Result<bool> {
        self.require_matching(m)?;
        let used = m.vertices();
        Ok(self
            .edges()
            .into_iter()
            .filter(|e| !m.edges().contains(e))
            .all(|(u, v)| used.contains(u) || used.contains(v)))
    }

    /// No edge of the graph touches two distinct members of `M`.
    pub fn is_induced_matching(&self, m: &Matching) -> Result<bool> {
        self.require_matching(m)?;
        let es = m.edges();
        for (i, &(a, b)) in es.iter().enumerate() {
            let reach = self.adj[a] | self.adj[b];
            for &(c, d) in &es[i + 1..] {
                if reach & (1 << c | 1 << d) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `G[W]`. Vertices of `W` are renumbered in increasing order; the result's
    /// labels record each vertex's label in the host graph.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Graph> {
        self.check_set(w)?;
        let old: Vec<usize> = w.iter().collect();
        let mut pos = [usize::MAX; 64];
        for (i, &v) in old.iter().enumerate() {
            pos[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| Bits(self.adj[v] & w.0).fold(0u64, |r, u| r | 1 << pos[u]))
            .collect();
        let labels = old.iter().map(|&v| self.label(v)).collect();
        Ok(Graph {
            n: old.len(),
            adj,
            labels: Some(labels),
        })
    }

    /// Vertices reachable from `start` inside `within`.
    pub(crate) fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut rest = full_mask(self.n);
        let mut out = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let c = self.reach(v, rest);
            out.push(VertexSet(c));
            rest &= !c;
        }
        out
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.reach(0, full_mask(self.n)) == full_mask(self.n)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// Vertices whose removal leaves the rest connected (for a connected graph).
    pub(crate) fn non_cut_vertices(&self) -> u64 {
        let full = full_mask(self.n);
        let mut out = 0;
        for v in 0..self.n {
            let rest = full & !(1 << v);
            if rest == 0 {
                out |= 1 << v;
                continue;
            }
            let s = rest.trailing_zeros() as usize;
            if self.reach(s, rest) == rest {
                out |= 1 << v;
            }
        }
        out
    }

    /// A copy with one new vertex `n` joined to `nbrs`. Labels are dropped.
    pub(crate) fn extended(&self, nbrs: u64) -> Graph {
        debug_assert!(self.n < MAX_VERTICES && nbrs & !full_mask(self.n) == 0);
        let mut adj = Vec::with_capacity(self.n + 1);
        adj.extend(
            self.adj
                .iter()
                .enumerate()
                .map(|(v, &r)| r | (nbrs >> v & 1) << self.n),
        );
        adj.push(nbrs);
        Graph {
            n: self.n + 1,
            adj,
            labels: None,
        }
    }

    /// Vertex-disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_capacity(n)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph {
            n,
            adj,
            labels: None,
        })
    }

    /// Relabel so that old vertex `perm[i]` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length mismatch"));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in perm.iter().enumerate() {
            if v >= self.n || pos[v] != usize::MAX {
                return Err(Error::input("not a permutation"));
            }
            pos[v] = i;
        }
        let adj = perm
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |r, u| r | 1 << pos[u]))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| perm.iter().map(|&v| l[v].clone()).collect());
        Ok(Graph {
            n: self.n,
            adj,
            labels,
        })
    }

    /// Every vertex pair across a proper 2-colouring is adjacent. Requires at
    /// least one edge and connectivity.
    pub fn is_complete_bipartite(&self) -> bool {
        if !self.is_connected() || self.n < 2 {
            return false;
        }
        let mut side = vec![u8::MAX; self.n];
        side[0] = 0;
        let mut stack = vec![0usize];
        let mut left = 1u64;
        while let Some(v) = stack.pop() {
            for u in Bits(self.adj[v]) {
                if side[u] == u8::MAX {
                    side[u] = 1 - side[v];
                    if side[u] == 0 {
                        left |= 1 << u;
                    }
                    stack.push(u);
                } else if side[u] == side[v] {
                    return false;
                }
            }
        }
        let right = full_mask(self.n) & !left;
        Bits(left).all(|v| self.adj[v] == right) && Bits(right).all(|v| self.adj[v] == left)
    }
}

pub(crate) fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            needed: n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Mutable staging area for a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(GraphBuilder {
            n,
            adj: vec![0; n],
            labels: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adding an existing edge again is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(Error::input(format!("loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(self)
    }

    pub fn labels<S: Into<String>>(&mut self, labels: Vec<S>) -> &mut Self {
        self.labels = Some(labels.into_iter().map(Into::into).collect());
        self
    }

    pub fn build(&self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Like [`build`](Self::build) but validates the label list.
    pub fn build_labeled(&self) -> Result<Graph> {
        let g = Graph {
            n: self.n,
            adj: self.adj.clone(),
            labels: None,
        };
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).unwrap();
            }
        }
        b.build()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn degrees() {
        let k4 = k(4);
        assert!((0..4).all(|v| k4.degree(v).unwrap() == 3));
        let c5 = cycle(5);
        assert!((0..5).all(|v| c5.degree(v).unwrap() == 2));
        assert!(matches!(
            c5.degree(5),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn neighborhoods() {
        assert_eq!(k(4).closed_neighborhood(0).unwrap(), VertexSet::full(4));
        let iso = Graph::empty(3).unwrap();
        assert_eq!(iso.closed_neighborhood(1).unwrap(), VertexSet::singleton(1));
        assert!(iso.closed_neighborhood(3).is_err());
    }

    #[test]
    fn independence() {
        let k4 = k(4);
        assert!(!k4.is_independent(VertexSet::from_vertices([0, 1])).unwrap());
        assert!(k4.is_independent(VertexSet::EMPTY).unwrap());
        assert!(k4.is_independent(VertexSet::singleton(2)).unwrap());
        assert!(k4.is_independent(VertexSet::singleton(9)).is_err());
    }

    #[test]
    fn matching_predicates() {
        let c5 = cycle(5);
        assert!(c5.is_matching(&Matching::new([(0, 1), (2, 3)])));
        assert!(!c5.is_matching(&Matching::new([(0, 1), (1, 2)])));
        assert!(!c5.is_matching(&Matching::new([(0, 2)])));
        assert!(!c5.is_maximal_matching(&Matching::new([(0, 1)])).unwrap());
        assert!(c5.is_maximal_matching(&Matching::new([(0, 1), (2, 3)])).unwrap());
        assert!(matches!(
            c5.is_maximal_matching(&Matching::new([(0, 1), (1, 2)])),
            Err(Error::Contract(_))
        ));
        let k2 = k(2);
        assert!(k2.is_maximal_matching(&Matching::new([(0, 1)])).unwrap());
    }

    #[test]
    fn induced_matching_predicate() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(two_k2
            .is_induced_matching(&Matching::new([(0, 1), (2, 3)]))
            .unwrap());
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!p4.is_induced_matching(&Matching::new([(0, 1), (2, 3)])).unwrap());
        assert!(p4.is_induced_matching(&Matching::new([(1, 2)])).unwrap());
    }

    #[test]
    fn induced_subgraphs() {
        let c5 = cycle(5);
        let empty = c5.induced_subgraph(VertexSet::EMPTY).unwrap();
        assert_eq!(empty.n(), 0);
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap(), c5);
        let p3 = c5.induced_subgraph(VertexSet::from_vertices([1, 2, 3])).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(p3.labels().unwrap(), ["1", "2", "3"]);
    }

    #[test]
    fn components() {
        let two_k2 = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let cs = two_k2.connected_components();
        assert_eq!(
            cs,
            vec![VertexSet::from_vertices([0, 2]), VertexSet::from_vertices([1, 3])]
        );
        assert_eq!(cycle(5).connected_components().len(), 1);
        assert!(Graph::empty(0).unwrap().connected_components().is_empty());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = GraphBuilder::new(3).unwrap();
        assert!(b.add_edge(0, 0).is_err());
        assert!(b.add_edge(0, 3).is_err());
        assert!(GraphBuilder::new(65).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0]).is_err());
        assert!(Graph::empty(3).unwrap().with_labels(vec!["a", "a", "b"]).is_err());
    }

    #[test]
    fn complete_bipartite_detection() {
        let c4 = cycle(4);
        assert!(c4.is_complete_bipartite());
        assert!(!cycle(6).is_complete_bipartite());
        assert!(!k(3).is_complete_bipartite());
        assert!(k(2).is_complete_bipartite());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.is_complete_bipartite());
    }

    #[test]
    fn non_cut() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.non_cut_vertices(), 0b1001);
        assert_eq!(cycle(5).non_cut_vertices(), 0b11111);
    }
}
