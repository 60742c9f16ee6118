#![allow(dead_code)]

use eml_core::composition::{Part, StarJoinSpec, Tag};
use eml_core::constructions::{complete, complete_bipartite, g_r};
use eml_core::Graph;

/// Graph on `n` vertices whose edges are the set bits of `mask`, pairs taken in
/// graph6 column order.
pub fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if mask[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// One star-join part from a compact code: family `kind % 3`, size and attach
/// vertex reduced into range.
pub fn part_from_code(kind: u8, size: u8, attach: u8) -> Part {
    match kind % 3 {
        0 => {
            let a = 1 + size as usize % 3;
            let g = complete_bipartite(a, a).unwrap();
            let v = attach as usize % g.n();
            Part::new(g, v, Tag::Bipartite)
        }
        1 => {
            let m = 2 + size as usize % 3;
            let g = g_r(m).unwrap();
            let v = attach as usize % g.n();
            Part::new(g, v, Tag::Pendant)
        }
        _ => Part::new(complete(2).unwrap(), attach as usize % 2, Tag::Pendant),
    }
}

pub fn spec_from_codes(codes: &[(u8, u8, u8)]) -> StarJoinSpec {
    StarJoinSpec::new(codes.iter().map(|&(k, s, a)| part_from_code(k, s, a)).collect()).unwrap()
}
