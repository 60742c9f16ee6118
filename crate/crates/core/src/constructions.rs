//! Named graph families and the closed-form edge bounds attached to them.
//!
//! Vertices are numbered family by family (X, then Y, Z, U, V, W) and carry
//! labels such as `x1`, `z3` in the same order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, MAX_VERTICES};

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::input(msg))
    }
}

fn capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            needed: n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Lays out labelled families and hands out their vertex ids.
struct Layout {
    labels: Vec<String>,
}

impl Layout {
    fn new() -> Self {
        Layout { labels: Vec::new() }
    }

    /// Adds family `name` of size `m`; returns the id of its first member.
    fn family(&mut self, name: char, m: usize) -> usize {
        let start = self.labels.len();
        self.labels.extend((1..=m).map(|i| format!("{name}{i}")));
        start
    }

    fn builder(&self) -> Result<GraphBuilder> {
        capacity(self.labels.len())?;
        GraphBuilder::new(self.labels.len())
    }

    fn finish(self, b: &GraphBuilder) -> Result<Graph> {
        b.build().with_labels(self.labels)
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    need(n >= 1, "complete graph K_n requires n >= 1")?;
    capacity(n)?;
    let mut b = GraphBuilder::new(n)?;
    for v in 0..n {
        for u in 0..v {
            b.add_edge(u, v)?;
        }
    }
    Ok(b.build())
}

/// `K_{m,n}` with the x-side first.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    need(m >= 1 && n >= 1, "complete bipartite graph K_{m,n} requires m, n >= 1")?;
    let mut l = Layout::new();
    let x = l.family('x', m);
    let y = l.family('y', n);
    let mut b = l.builder()?;
    for i in 0..m {
        for j in 0..n {
            b.add_edge(x + i, y + j)?;
        }
    }
    l.finish(&b)
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "cycle C_n requires n >= 3")?;
    capacity(n)?;
    let mut b = GraphBuilder::new(n)?;
    for v in 0..n {
        b.add_edge(v, (v + 1) % n)?;
    }
    Ok(b.build())
}

/// `W(G)`: a pendant `w_i` hung on every vertex `v_i`.
pub fn whisker(g: &Graph) -> Result<Graph> {
    let n = g.n();
    need(n >= 1, "whiskering requires at least one vertex")?;
    let mut l = Layout::new();
    let v = l.family('v', n);
    let w = l.family('w', n);
    let mut b = l.builder()?;
    for (s, t) in g.edges() {
        b.add_edge(v + s, v + t)?;
    }
    for i in 0..n {
        b.add_edge(v + i, w + i)?;
    }
    l.finish(&b)
}

/// `G_r`: a clique on `x_1..x_r` with a pendant `y_k` on each `x_k`.
pub fn g_r(r: usize) -> Result<Graph> {
    need(r >= 2, "G_r requires r >= 2")?;
    let mut l = Layout::new();
    let x = l.family('x', r);
    let y = l.family('y', r);
    let mut b = l.builder()?;
    for i in 0..r {
        for j in i + 1..r {
            b.add_edge(x + i, x + j)?;
        }
        b.add_edge(x + i, y + i)?;
    }
    l.finish(&b)
}

/// Paths `x_i y_i` hanging from `z_2` on the path `z_1 z_2 z_3 z_4`.
pub fn g1(q: usize) -> Result<Graph> {
    need(q >= 2, "g1 requires q >= 2")?;
    let mut l = Layout::new();
    let x = l.family('x', q - 1);
    let y = l.family('y', q - 1);
    let z = l.family('z', 4);
    let mut b = l.builder()?;
    for i in 0..q - 1 {
        b.add_edge(x + i, y + i)?;
        b.add_edge(y + i, z + 1)?;
    }
    for i in 0..3 {
        b.add_edge(z + i, z + i + 1)?;
    }
    l.finish(&b)
}

/// A tree on `2r` vertices.
pub fn g2(q: usize, r: usize) -> Result<Graph> {
    need(
        q >= 2 && q + 2 <= r && r <= 2 * q,
        "g2 requires q >= 2 and q+2 <= r <= 2q",
    )?;
    let m = 2 * q - r + 1;
    let zs = 2 * r - 2 * q + 2;
    let k = r - q - 2;
    let mut l = Layout::new();
    let x = l.family('x', m);
    let y = l.family('y', m);
    let z = l.family('z', zs);
    let u = l.family('u', k);
    let v = l.family('v', k);
    let mut b = l.builder()?;
    for i in 0..m {
        b.add_edge(x + i, y + i)?;
        b.add_edge(y + i, z + 1)?;
    }
    for i in 0..zs - 1 {
        b.add_edge(z + i, z + i + 1)?;
    }
    for i in 0..k {
        b.add_edge(u + i, v + i)?;
        // v_i (1-based) joins z_{2i+5}
        b.add_edge(v + i, z + 2 * (i + 1) + 4)?;
    }
    l.finish(&b)
}

/// The spider with `r` legs of length two.
pub fn g3(r: usize) -> Result<Graph> {
    need(r >= 2, "g3 requires r >= 2")?;
    let mut l = Layout::new();
    let x = l.family('x', r);
    let y = l.family('y', r);
    let z = l.family('z', 1);
    let mut b = l.builder()?;
    for i in 0..r {
        b.add_edge(x + i, y + i)?;
        b.add_edge(y + i, z)?;
    }
    l.finish(&b)
}

/// `K_{q,q}` with pendants `z_1` on `x_q` and `z_2` on `y_q`.
pub fn g4(q: usize) -> Result<Graph> {
    need(q >= 2, "g4 requires q >= 2")?;
    let mut l = Layout::new();
    let x = l.family('x', q);
    let y = l.family('y', q);
    let z = l.family('z', 2);
    let mut b = l.builder()?;
    for i in 0..q {
        for j in 0..q {
            b.add_edge(x + i, y + j)?;
        }
    }
    b.add_edge(x + q - 1, z)?;
    b.add_edge(y + q - 1, z + 1)?;
    l.finish(&b)
}

/// `K_{q-1,q-1}` on X, Y; every
/// `x_i` joined to `z_{r-q}` and `z_{r-q+1}`; every `y_i` joined to
/// `z_1..z_{r-q-1}`; a clique on Z with pendants `w_i`.
pub fn g5(q: usize, r: usize) -> Result<Graph> {
    need(q + 2 <= r && r + 2 <= 2 * q, "g5 requires q+2 <= r <= 2q-2")?;
    let s = r - q + 1;
    let mut l = Layout::new();
    let x = l.family('x', q - 1);
    let y = l.family('y', q - 1);
    let z = l.family('z', s);
    let w = l.family('w', s);
    let mut b = l.builder()?;
    for i in 0..q - 1 {
        for j in 0..q - 1 {
            b.add_edge(x + i, y + j)?;
        }
        b.add_edge(x + i, z + r - q - 1)?;
        b.add_edge(x + i, z + r - q)?;
        for j in 0..r - q - 1 {
            b.add_edge(y + i, z + j)?;
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            b.add_edge(z + i, z + j)?;
        }
        b.add_edge(z + i, w + i)?;
    }
    l.finish(&b)
}

/// `C(n, 2)`.
pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn f_range(q: usize, r: usize) -> Result<(u64, u64)> {
    need(q + 2 <= r && r + 2 <= 2 * q, "f1/f2 require q+2 <= r <= 2q-2")?;
    Ok((q as u64, r as u64))
}

/// `r(q-1) + C(r-q+2, 2)`, the size of [`g5`].
pub fn f1(q: usize, r: usize) -> Result<u64> {
    let (q, r) = f_range(q, r)?;
    Ok(r * (q - 1) + binom2(r - q + 2))
}

/// `2(r-q) + C(2q, 2)`.
pub fn f2(q: usize, r: usize) -> Result<u64> {
    let (q, r) = f_range(q, r)?;
    Ok(2 * (r - q) + binom2(2 * q))
}

/// `dividend = a * divisor + b` with `0 <= b < divisor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub a: u64,
    pub b: u64,
    pub divisor: u64,
    pub dividend: u64,
}

pub fn divide(dividend: u64, divisor: u64) -> Result<BoundParams> {
    need(divisor >= 1, "division by zero")?;
    Ok(BoundParams {
        a: dividend / divisor,
        b: dividend % divisor,
        divisor,
        dividend,
    })
}

/// Case `r = q`: `(a^2 + 1)p + (2a + 1)b` with `q = ap + b`.
pub fn bound34_1(p: usize, q: usize) -> Result<u64> {
    need(2 <= p && p < q, "bound34_1 requires 2 <= p < q")?;
    let d = divide(q as u64, p as u64)?;
    Ok((d.a * d.a + 1) * p as u64 + (2 * d.a + 1) * d.b)
}

/// Case `q < r <= 2q-p+1`: `a^2(p-1) + (2a+1)b + p + C(2(r-q)+1, 2)` with `2q-r = a(p-1) + b`.
pub fn bound34_2(p: usize, q: usize, r: usize) -> Result<u64> {
    need(
        2 <= p && p < q && q < r && r + p <= 2 * q + 1,
        "bound34_2 requires 2 <= p < q < r <= 2q-p+1",
    )?;
    let (p, q, r) = (p as u64, q as u64, r as u64);
    let d = divide(2 * q - r, p - 1)?;
    Ok(d.a * d.a * (p - 1) + (2 * d.a + 1) * d.b + p + binom2(2 * (r - q) + 1))
}

/// Case `2q-p+1 < r <= 2q`: `p + 2q - r + (p-2q+r) C(2a+1, 2) + b(4a+3)` with `r-q = a(p-2q+r) + b`.
pub fn bound34_3(p: usize, q: usize, r: usize) -> Result<u64> {
    need(
        2 <= p && p < q && 2 * q + 1 < r + p && r <= 2 * q,
        "bound34_3 requires 2 <= p < q and 2q-p+1 < r <= 2q",
    )?;
    let (p, q, r) = (p as u64, q as u64, r as u64);
    let m = p + r - 2 * q;
    let d = divide(r - q, m)?;
    Ok(p + 2 * q - r + m * binom2(2 * d.a + 1) + d.b * (4 * d.a + 3))
}
