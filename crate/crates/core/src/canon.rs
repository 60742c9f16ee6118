//! Canonical labeling by equitable partition refinement and individualization.
//!
//! The search tree is the usual one: refine the (coloured) unit partition to an
//! equitable partition, individualize each vertex of the first non-singleton
//! cell in turn, refine again, and so on down to discrete partitions. Each leaf
//! induces a relabeled adjacency matrix; the canonical form is the least one.
//!
//! Two prunings keep symmetric graphs cheap. When a leaf reproduces the first
//! (or best) leaf, the map between them is an automorphism and the subtree
//! where the paths diverge is an image of one already explored, so the search
//! jumps back to the divergence point. At every node, children lying in a common
//! orbit of the automorphisms found so far that fix the node's prefix are
//! visited once.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::graph::{Bits, Graph};
use crate::graph6::emit_graph6;

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Adjacency rows of the relabeled graph, row `i` for position `i`.
    pub code: Vec<u64>,
    /// Automorphisms discovered along the way, as vertex maps.
    pub automorphisms: Vec<Vec<usize>>,
}

impl Labeling {
    pub fn canonical_graph(&self) -> Graph {
        Graph::from_adjacency(self.code.clone()).expect("relabeling preserves simplicity")
    }
}

/// Canonical labeling of `g`, optionally respecting a vertex colouring.
///
/// With `colors`, only colour-preserving relabelings are considered and the
/// cells are ordered by colour value, so two coloured graphs get equal codes
/// iff there is a colour-preserving isomorphism between them.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u32]>) -> Labeling {
    let n = g.n();
    let adj = g.adjacency();
    if n == 0 {
        return Labeling {
            order: Vec::new(),
            code: Vec::new(),
            automorphisms: Vec::new(),
        };
    }
    let mut cells: Vec<u64> = match colors {
        None => vec![crate::graph::full_mask(n)],
        Some(c) => {
            assert_eq!(c.len(), n, "one colour per vertex");
            let mut by: Vec<(u32, usize)> = c.iter().copied().zip(0..n).collect();
            by.sort_unstable();
            let mut out: Vec<u64> = Vec::new();
            let mut last = None;
            for (col, v) in by {
                if last == Some(col) {
                    *out.last_mut().unwrap() |= 1 << v;
                } else {
                    out.push(1 << v);
                    last = Some(col);
                }
            }
            out
        }
    };
    let mut queue: VecDeque<u64> = cells.iter().copied().collect();
    refine(adj, &mut cells, &mut queue);

    let mut search = Search {
        adj,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut seq = Vec::new();
    search.visit(cells, &mut seq);
    let best = search.best.expect("search reaches at least one leaf");
    Labeling {
        order: best.order,
        code: best.code,
        automorphisms: search.autos,
    }
}

/// Label-invariant key: equal iff the graphs are isomorphic. It is the graph6
/// text of the canonically relabeled graph.
pub fn canonical_form(g: &Graph) -> String {
    emit_graph6(&canonical_labeling(g, None).canonical_graph())
}

/// Canonical code of `g` with vertex `v` singled out. Equal codes for `(g, v)`
/// and `(h, w)` mean some isomorphism `g -> h` sends `v` to `w`.
pub(crate) fn marked_code(g: &Graph, v: usize) -> Vec<u64> {
    let mut colors = vec![0u32; g.n()];
    colors[v] = 1;
    canonical_labeling(g, Some(&colors)).code
}

/// True when refinement alone separates every vertex; the automorphism group
/// is then trivial. (False does not imply symmetry.)
pub(crate) fn refines_to_discrete(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut cells = vec![crate::graph::full_mask(n)];
    let mut queue: VecDeque<u64> = cells.iter().copied().collect();
    refine(g.adjacency(), &mut cells, &mut queue);
    cells.len() == n
}

/// Split every cell by neighbour counts into each splitter until stable.
/// Fragments keep the position of the cell they came from, ordered by count.
fn refine(adj: &[u64], cells: &mut Vec<u64>, queue: &mut VecDeque<u64>) {
    let mut buckets = [0u64; 65];
    while let Some(w) = queue.pop_front() {
        let mut i = 0;
        while i < cells.len() {
            let c = cells[i];
            if c & (c - 1) == 0 {
                i += 1;
                continue;
            }
            let mut lo = usize::MAX;
            let mut hi = 0;
            for v in Bits(c) {
                let k = (adj[v] & w).count_ones() as usize;
                buckets[k] |= 1 << v;
                lo = lo.min(k);
                hi = hi.max(k);
            }
            if lo == hi {
                buckets[lo] = 0;
                i += 1;
                continue;
            }
            let mut frags = Vec::new();
            for b in &mut buckets[lo..=hi] {
                if *b != 0 {
                    frags.push(*b);
                    queue.push_back(*b);
                    *b = 0;
                }
            }
            let k = frags.len();
            cells.splice(i..=i, frags);
            i += k;
        }
    }
}

struct Leaf {
    seq: Vec<usize>,
    order: Vec<usize>,
    code: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn code_of(&self, order: &[usize]) -> Vec<u64> {
        let mut pos = [0usize; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |r, u| r | 1 << pos[u]))
            .collect()
    }

    /// Returns `Some(k)` to unwind to the node at depth `k`.
    fn visit(&mut self, cells: Vec<u64>, seq: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, seq);
        }
        let t = cells
            .iter()
            .position(|c| c & (c - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let target = cells[t];
        let depth = seq.len();
        let mut explored: u64 = 0;
        let mut seen_autos = usize::MAX;
        let mut orbit_of: Vec<usize> = Vec::new();
        for v in Bits(target) {
            if explored != 0 {
                if seen_autos != self.autos.len() {
                    orbit_of = self.stabilizer_orbits(seq);
                    seen_autos = self.autos.len();
                }
                if Bits(explored).any(|u| orbit_of[u] == orbit_of[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            let mut queue = VecDeque::from([1u64 << v]);
            refine(self.adj, &mut child, &mut queue);

            seq.push(v);
            let jump = self.visit(child, seq);
            seq.pop();
            explored |= 1 << v;
            if let Some(k) = jump {
                if k < depth {
                    return Some(k);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], seq: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = self.code_of(&order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                seq: seq.to_vec(),
                order,
                code,
            };
            self.best = Some(Leaf {
                seq: leaf.seq.clone(),
                order: leaf.order.clone(),
                code: leaf.code.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let gamma = map_between(&first.order, &order);
            let k = common_prefix(&first.seq, seq);
            self.autos.push(gamma);
            return Some(k);
        }
        let best = self.best.as_ref().expect("best set with first");
        match code.cmp(&best.code) {
            Ordering::Equal => {
                let gamma = map_between(&best.order, &order);
                let k = common_prefix(&best.seq, seq);
                self.autos.push(gamma);
                Some(k)
            }
            Ordering::Less => {
                self.best = Some(Leaf {
                    seq: seq.to_vec(),
                    order,
                    code,
                });
                None
            }
            Ordering::Greater => None,
        }
    }

    /// Orbits of the group generated by known automorphisms fixing `prefix`.
    fn stabilizer_orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.autos {
            if prefix.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (v, &img) in gamma.iter().enumerate() {
                let a = find(&mut parent, v);
                let b = find(&mut parent, img);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }
}

/// The vertex map sending `from[i]` to `to[i]`.
fn map_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Least relabeled code over all permutations; independent of the refinement search.
    fn brute_code(g: &Graph) -> Vec<u64> {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u64>> = None;
        loop {
            let h = g.permuted(&perm).unwrap();
            let code = h.adjacency().to_vec();
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        best.unwrap_or_default()
    }

    #[test]
    fn relabeled_cycles_agree() {
        let c5 = cycle(5);
        let shuffled = c5.permuted(&[3, 0, 4, 1, 2]).unwrap();
        assert_ne!(c5, shuffled);
        assert_eq!(canonical_form(&c5), canonical_form(&shuffled));
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&star));
    }

    #[test]
    fn labelled_paths_on_four_vertices_share_one_key() {
        // every graph on 4 labelled vertices isomorphic to P4, found via the brute oracle
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let target = brute_code(&p4);
        let mut keys = std::collections::BTreeSet::new();
        let mut count = 0;
        for mask in 0u32..64 {
            let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(4, &edges).unwrap();
            if brute_code(&g) == target {
                count += 1;
                keys.insert(canonical_form(&g));
            }
        }
        assert_eq!(count, 12);
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn matches_brute_force_equivalence_on_all_five_vertex_graphs() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut by_brute = std::collections::HashMap::new();
        let mut by_canon = std::collections::HashMap::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(5, &edges).unwrap();
            let b = brute_code(&g);
            let c = canonical_form(&g);
            // the partition induced by both keys must coincide
            if let Some(p) = by_brute.insert(b.clone(), c.clone()) {
                assert_eq!(p, c);
            }
            if let Some(p) = by_canon.insert(c, b.clone()) {
                assert_eq!(p, b);
            }
        }
        // graphs on 5 vertices up to isomorphism
        assert_eq!(by_brute.len(), by_canon.len());
        assert_eq!(by_canon.len(), 34);
    }

    #[test]
    fn symmetric_graphs_are_fast_and_find_automorphisms() {
        let mut b = crate::graph::GraphBuilder::new(40).unwrap();
        for u in 0..40 {
            for v in u + 1..40 {
                b.add_edge(u, v).unwrap();
            }
        }
        let k40 = b.build();
        let lab = canonical_labeling(&k40, None);
        assert!(!lab.automorphisms.is_empty());
        assert_eq!(lab.canonical_graph(), k40);

        let empty = Graph::empty(30).unwrap();
        assert_eq!(canonical_form(&empty), emit_graph6(&empty));
    }

    #[test]
    fn automorphisms_are_automorphisms() {
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        let lab = canonical_labeling(&petersen, None);
        for gamma in &lab.automorphisms {
            for (u, v) in petersen.edges() {
                assert!(petersen.has_edge(gamma[u], gamma[v]));
            }
        }
        let shuffled = petersen.permuted(&[7, 2, 9, 0, 4, 1, 8, 3, 6, 5]).unwrap();
        assert_eq!(canonical_form(&shuffled), canonical_form(&petersen));
    }

    #[test]
    fn colours_are_respected() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(marked_code(&p3, 0), marked_code(&p3, 2));
        assert_ne!(marked_code(&p3, 0), marked_code(&p3, 1));
    }
}
