//! Maximum clique on graphs of arbitrary order with greedy-colouring bounds.
//! Independence problems are solved here on the complement.

use super::budget::Meter;

#[derive(Clone, Debug)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

pub(crate) type Set = Vec<u64>;

fn first(set: &[u64]) -> Option<usize> {
    set.iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + set[i].trailing_zeros() as usize)
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_edge(&mut self, a: usize, b: usize) {
        self.data[a * self.words + b / 64] |= 1 << (b % 64);
        self.data[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.words..(v + 1) * self.words]
    }

    pub fn full_set(&self) -> Set {
        let mut s = vec![0u64; self.words];
        for v in 0..self.n {
            s[v / 64] |= 1 << (v % 64);
        }
        s
    }
}

struct Search<'a> {
    g: &'a BitMatrix,
    meter: &'a mut Meter,
    best: usize,
    witness: Vec<usize>,
    current: Vec<usize>,
    stop_at: usize,
    aborted: bool,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; vertices in colour order with their colour numbers.
    fn colour(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut k = 0;
        while !is_empty(&uncoloured) {
            k += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first(&q) {
                q[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (x, r) in q.iter_mut().zip(self.g.row(v)) {
                    *x &= !r;
                }
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: Set) {
        if self.aborted || self.best >= self.stop_at {
            return;
        }
        if self.meter.tick() {
            self.aborted = true;
            return;
        }
        let (order, colours) = self.colour(&p);
        for i in (0..order.len()).rev() {
            if self.current.len() + colours[i] <= self.best || self.aborted || self.best >= self.stop_at {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let next: Set = p.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if is_empty(&next) {
                if self.current.len() > self.best {
                    self.best = self.current.len();
                    self.witness = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Largest clique inside `within`: its size and one clique (unsorted). When
/// the meter runs out the error carries the best size seen.
pub(crate) fn max_clique(
    g: &BitMatrix,
    within: &[u64],
    meter: &mut Meter,
    stop_at: usize,
) -> Result<(usize, Vec<usize>), usize> {
    if is_empty(within) {
        return Ok((0, Vec::new()));
    }
    let mut s = Search {
        g,
        meter,
        best: 0,
        witness: Vec::new(),
        current: Vec::new(),
        stop_at,
        aborted: false,
    };
    s.expand(within.to_vec());
    if s.aborted {
        Err(s.best)
    } else {
        Ok((s.best, s.witness))
    }
}

/// Lexicographically least maximum clique (as a sorted vertex list), or the
/// best size found before the meter ran out.
pub(crate) fn lex_least_max_clique(g: &BitMatrix, meter: &mut Meter) -> Result<Vec<usize>, usize> {
    let all = g.full_set();
    let target = match max_clique(g, &all, meter, usize::MAX) {
        Ok((t, _)) => t,
        Err(best) => return Err(best),
    };
    let mut chosen = Vec::with_capacity(target);
    let mut p = all;
    for v in 0..g.n() {
        if chosen.len() == target {
            break;
        }
        if p[v / 64] >> (v % 64) & 1 == 0 {
            continue;
        }
        p[v / 64] &= !(1 << (v % 64));
        let rest: Set = p.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        let need = target - chosen.len() - 1;
        let ok = need == 0
            || match max_clique(g, &rest, meter, need) {
                Ok((k, _)) => k >= need,
                Err(_) => return Err(target),
            };
        if ok {
            chosen.push(v);
            p = rest;
        }
    }
    debug_assert_eq!(chosen.len(), target);
    Ok(chosen)
}
