//! Maximum matchings via Edmonds' blossom algorithm on bitset rows.

use crate::graph::{Bits, Graph, Matching};

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [u64],
    alive: u64,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [u64], alive: u64) -> Self {
        let n = adj.len();
        let mut b = Blossom {
            adj,
            alive,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        };
        let mut free = alive;
        for v in Bits(alive) {
            if free >> v & 1 == 0 {
                continue;
            }
            let c = adj[v] & free & !(1 << v);
            if c != 0 {
                let w = c.trailing_zeros() as usize;
                b.mate[v] = w;
                b.mate[w] = v;
                free &= !(1 << v | 1 << w);
            }
        }
        b
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = 0u64;
        loop {
            a = self.base[a];
            seen |= 1 << a;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen >> b & 1 == 1 {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in Bits(self.adj[v] & self.alive) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<usize> {
        for root in Bits(self.alive) {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let ppv = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = ppv;
                }
            }
        }
        self.mate
    }
}

/// Mate array of a maximum matching of the subgraph induced by `alive`.
pub(crate) fn max_mates(adj: &[u64], alive: u64) -> Vec<usize> {
    Blossom::new(adj, alive).run()
}

pub(crate) fn nu(adj: &[u64], alive: u64) -> usize {
    max_mates(adj, alive).iter().filter(|&&m| m != NONE).count() / 2
}

/// `ν(G)`, the size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    nu(g.adjacency(), g.vertices().0)
}

/// The lexicographically least maximum matching (edges compared in sorted order).
pub fn maximum_matching(g: &Graph) -> Matching {
    let mut rows = g.adjacency().to_vec();
    let target = nu(&rows, g.vertices().0);
    let mut alive = g.vertices().0;
    let mut chosen = Vec::with_capacity(target);
    for (u, v) in g.edges() {
        if chosen.len() == target {
            break;
        }
        if alive >> u & 1 == 0 || alive >> v & 1 == 0 {
            continue;
        }
        let rest = alive & !(1 << u | 1 << v);
        if chosen.len() + 1 + nu(&rows, rest) == target {
            chosen.push((u, v));
            alive = rest;
        } else {
            rows[u] &= !(1 << v);
            rows[v] &= !(1 << u);
        }
    }
    Matching::new(chosen)
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.n() > 0 && 2 * matching_number(g) == g.n()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_nu(g: &Graph) -> usize {
        let edges = g.edges();
        let mut best = 0;
        for mask in 0u32..1 << edges.len() {
            let mut used = 0u64;
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used >> u & 1 == 1 || used >> v & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used |= 1 << u | 1 << v;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn odd_cycles_and_petersen() {
        for n in 3..12 {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            assert_eq!(matching_number(&g), n / 2);
        }
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = Graph::from_edges(10, &e).unwrap();
        assert!(has_perfect_matching(&p));
    }

    #[test]
    fn blossom_needed() {
        // triangle with two pendant paths; greedy init picks the wrong edges
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        assert_eq!(matching_number(&g), brute_nu(&g));
    }

    #[test]
    fn agrees_with_brute_force_on_pseudo_random_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for _ in 0..300 {
            let n = 2 + (state % 9) as usize;
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 3 == 0 && edges.len() < 18 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let m = maximum_matching(&g);
            assert_eq!(matching_number(&g), brute_nu(&g));
            assert_eq!(m.len(), brute_nu(&g));
            assert!(g.is_matching(&m));
        }
    }

    #[test]
    fn lexicographic_witness() {
        // path 0-1-2-3: {01,23} is least
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(maximum_matching(&g).edges(), &[(0, 1), (2, 3)]);
        // star K_{1,3} centred at 2
        let s = Graph::from_edges(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(maximum_matching(&s).edges(), &[(0, 2)]);
    }
}
