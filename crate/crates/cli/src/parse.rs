use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use eml_core::composition::{thm34_1, thm34_2, thm34_3, Part, StarJoinSpec, Tag};
use eml_core::constructions::{
    binom2, bound34_1, bound34_2, bound34_3, complete, complete_bipartite, cycle, f1, g1, g2, g3, g4, g5,
    g_r, whisker,
};
use eml_core::{parse_graph6, Graph, InvariantTriple};

const FAMILIES: &[(&str, &[&str])] = &[
    ("Kn", &["n"]),
    ("Kmn", &["m", "n"]),
    ("Cn", &["n"]),
    ("whisker", &["g"]),
    ("gr", &["r"]),
    ("g1", &["q"]),
    ("g2", &["q", "r"]),
    ("g3", &["r"]),
    ("g4", &["q"]),
    ("g5", &["q", "r"]),
    ("starjoin", &["spec"]),
    ("thm34-1", &["p", "q"]),
    ("thm34-2", &["p", "q", "r"]),
    ("thm34-3", &["p", "q", "r"]),
];

/// A constructed graph with what its closed forms predict.
pub struct Built {
    pub family: &'static str,
    pub params: BTreeMap<String, String>,
    pub graph: Graph,
    pub predicted: Option<InvariantTriple>,
    pub formula_edges: Option<u64>,
    pub spec: Option<StarJoinSpec>,
}

fn lookup(family: &str) -> Result<(&'static str, &'static [&'static str])> {
    FAMILIES
        .iter()
        .find(|(name, _)| name.eq_ignore_ascii_case(family))
        .copied()
        .ok_or_else(|| {
            let names: Vec<_> = FAMILIES.iter().map(|f| f.0).collect();
            anyhow!("unknown family {family:?}; expected one of {}", names.join(", "))
        })
}

/// Positional or `name=value` parameters, matched to the family's parameter names.
pub fn params(family: &str, args: &[String]) -> Result<(&'static str, BTreeMap<String, String>)> {
    let (name, names) = lookup(family)?;
    let mut out = BTreeMap::new();
    for a in args {
        let (k, v) = match a.split_once('=') {
            Some((k, v)) => {
                if !names.contains(&k) {
                    bail!("{name} has no parameter {k:?}; parameters: {}", names.join(" "));
                }
                (k.to_string(), v.to_string())
            }
            None => {
                let k = names
                    .iter()
                    .find(|n| !out.contains_key(**n))
                    .ok_or_else(|| anyhow!("{name} takes {} parameter(s)", names.len()))?;
                (k.to_string(), a.clone())
            }
        };
        if out.insert(k.clone(), v).is_some() {
            bail!("parameter {k} given twice");
        }
    }
    for n in names {
        if !out.contains_key(*n) {
            bail!("{name} needs parameter {n} (parameters: {})", names.join(" "));
        }
    }
    Ok((name, out))
}

fn num(params: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    let v = &params[key];
    v.parse().with_context(|| format!("{key} must be a non-negative integer, got {v:?}"))
}

fn t(p: usize, q: usize, r: usize) -> Option<InvariantTriple> {
    Some(InvariantTriple::new(p, q, r))
}

pub fn construct(family: &str, args: &[String]) -> Result<Built> {
    let (family, ps) = params(family, args)?;
    let n = |k: &str| num(&ps, k);
    let mut spec = None;
    let (graph, predicted, formula_edges) = match family {
        "Kn" => {
            let k = n("n")?;
            (complete(k)?, None, Some(binom2(k as u64)))
        }
        "Kmn" => {
            let (a, b) = (n("m")?, n("n")?);
            (complete_bipartite(a, b)?, None, Some((a * b) as u64))
        }
        "Cn" => {
            let k = n("n")?;
            (cycle(k)?, None, Some(k as u64))
        }
        "whisker" => {
            let g = parse_graph6(&ps["g"])?;
            let w = whisker(&g)?;
            (w, None, Some((g.edge_count() + g.n()) as u64))
        }
        "gr" => {
            let r = n("r")?;
            (g_r(r)?, t(1, r.div_ceil(2), r), Some(binom2(r as u64 + 1)))
        }
        "g1" => {
            let q = n("q")?;
            (g1(q)?, t(q, q, q + 1), Some(2 * q as u64 + 1))
        }
        "g2" => {
            let (q, r) = (n("q")?, n("r")?);
            (g2(q, r)?, t(q, q, r), Some(2 * r as u64 - 1))
        }
        "g3" => {
            let r = n("r")?;
            (g3(r)?, t(r, r, r), Some(2 * r as u64))
        }
        "g4" => {
            let q = n("q")?;
            (g4(q)?, t(1, q, q + 1), Some((q * q) as u64 + 2))
        }
        "g5" => {
            let (q, r) = (n("q")?, n("r")?);
            (g5(q, r)?, t(1, q, r), Some(f1(q, r)?))
        }
        "starjoin" => {
            let s = star_join_spec(&ps["spec"])?;
            let edges = s.parts().iter().map(|p| p.graph.edge_count() + 1).sum::<usize>() as u64;
            let g = eml_core::composition::star_join(&s)?;
            spec = Some(s);
            (g, None, Some(edges))
        }
        "thm34-1" => {
            let (p, q) = (n("p")?, n("q")?);
            let s = thm34_1(p, q)?;
            let g = eml_core::composition::star_join(&s)?;
            spec = Some(s);
            (g, t(p, q, q), Some(bound34_1(p, q)?))
        }
        "thm34-2" | "thm34-3" => {
            let (p, q, r) = (n("p")?, n("q")?, n("r")?);
            let (s, bound) = if family == "thm34-2" {
                (thm34_2(p, q, r)?, bound34_2(p, q, r)?)
            } else {
                (thm34_3(p, q, r)?, bound34_3(p, q, r)?)
            };
            let g = eml_core::composition::star_join(&s)?;
            spec = Some(s);
            (g, t(p, q, r), Some(bound))
        }
        _ => unreachable!("family table"),
    };
    Ok(Built {
        family,
        params: ps,
        graph,
        predicted,
        formula_edges,
        spec,
    })
}

/// One part graph from `FAMILY(ARGS)`; `g6(...)` takes a graph6 string.
fn part_graph(term: &str) -> Result<Graph> {
    let (name, rest) = term
        .split_once('(')
        .ok_or_else(|| anyhow!("part {term:?} must look like FAMILY(ARGS)"))?;
    let args = rest
        .strip_suffix(')')
        .ok_or_else(|| anyhow!("part {term:?} is missing ')'"))?;
    let name = name.trim();
    if name == "g6" {
        return Ok(parse_graph6(args.trim())?);
    }
    let args: Vec<String> = args
        .split(',')
        .map(|a| a.trim().to_string())
        .filter(|a| !a.is_empty())
        .collect();
    let built = construct(name, &args)?;
    if built.spec.is_some() {
        bail!("part {term:?} must be a single graph, not a join");
    }
    Ok(built.graph)
}

/// Parts separated by `+`, each `FAMILY(ARGS)@VERTEX[:a|:b]`. The vertex is an
/// index or a label; the tag defaults to `b` for complete bipartite parts.
pub fn star_join_spec(text: &str) -> Result<StarJoinSpec> {
    let mut parts = Vec::new();
    for (i, raw) in text.split('+').enumerate() {
        let raw = raw.trim();
        let close = raw.rfind(')').unwrap_or(0);
        let at = raw[close..]
            .find('@')
            .map(|k| k + close)
            .ok_or_else(|| anyhow!("part {} ({raw:?}) needs @VERTEX", i + 1))?;
        let graph = part_graph(&raw[..at]).with_context(|| format!("part {}", i + 1))?;
        let (vertex, tag) = match raw[at + 1..].split_once(':') {
            Some((v, tag)) => (v.trim(), Some(tag.trim())),
            None => (raw[at + 1..].trim(), None),
        };
        let attach = match vertex.parse::<usize>() {
            Ok(v) => v,
            Err(_) => graph
                .vertex_by_label(vertex)
                .ok_or_else(|| anyhow!("part {}: no vertex labelled {vertex:?}", i + 1))?,
        };
        let tag = match tag {
            Some("a") => Tag::Pendant,
            Some("b") => Tag::Bipartite,
            Some(other) => bail!("part {}: tag must be a or b, got {other:?}", i + 1),
            None if graph.is_complete_bipartite() => Tag::Bipartite,
            None => Tag::Pendant,
        };
        parts.push(Part::new(graph, attach, tag));
    }
    Ok(StarJoinSpec::new(parts)?)
}

/// Name the first violated inequality of `1 <= p <= q <= r <= 2q`.
pub fn feasible_triple(p: usize, q: usize, r: usize) -> Result<InvariantTriple> {
    let broken = if p < 1 {
        Some("1 <= p")
    } else if p > q {
        Some("p <= q")
    } else if q > r {
        Some("q <= r")
    } else if r > 2 * q {
        Some("r <= 2q")
    } else {
        None
    };
    match broken {
        Some(b) => bail!("invalid triple ({p},{q},{r}): violates {b}"),
        None => Ok(InvariantTriple::new(p, q, r)),
    }
}
