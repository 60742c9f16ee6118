//! The graph6 text format, restricted to the 64-vertex capacity of [`Graph`].
//!
//! `N(n)` is one byte `n + 63` for `n <= 62`, otherwise `~` followed by three
//! bytes holding 18 bits of `n`. The upper triangle follows column by column,
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...`, padded to a multiple of six bits, six
//! bits per byte plus 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Parse one graph6 record. A trailing newline and the optional `>>graph6<<`
/// header are accepted; anything else after the bit vector is rejected.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let base = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = &text.as_bytes()[base..];

    if bytes.is_empty() {
        return Err(parse_err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }

    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            return Err(parse_err(base + 1, "graphs beyond 258047 vertices are not supported"));
        }
        if bytes.len() < 4 {
            return Err(parse_err(base + bytes.len(), "truncated extended vertex count"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= 62 {
            return Err(parse_err(base, "extended vertex count used for n <= 62"));
        }
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(parse_err(base, format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() < pos + need {
        return Err(parse_err(base + bytes.len(), format!("truncated: expected {need} adjacency bytes")));
    }
    if bytes.len() > pos + need {
        return Err(parse_err(base + pos + need, "trailing bytes after adjacency data"));
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    // padding must be zero for the encoding to be canonical
    if bits % 6 != 0 {
        let last = bytes[pos + need - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(parse_err(base + pos + need - 1, "nonzero padding bits"));
        }
    }
    pos += need;
    debug_assert_eq!(pos, bytes.len());
    Graph::from_adjacency(adj)
}

/// Encode without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
