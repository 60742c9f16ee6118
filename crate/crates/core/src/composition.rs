//! Star-joins: disjoint parts plus one hub adjacent to a chosen vertex of each part.

use serde::{Deserialize, Serialize};

use crate::constructions::{
    binom2, bound34_1, bound34_2, bound34_3, complete, complete_bipartite, divide, f1, f2, g1,
    g2, g3, g4, g5, g_r,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, MAX_VERTICES};
use crate::invariants::{
    has_perfect_matching, induced_matching_number, matching_number, min_maximal_matching_number,
    satisfies_star1, satisfies_star2, InvariantTriple, SolverBudget,
};

/// Which alternative of the induced-matching hypothesis a part is meant to meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    /// The attach vertex has a pendant neighbour.
    #[serde(rename = "a")]
    Pendant,
    /// The part is complete bipartite.
    #[serde(rename = "b")]
    Bipartite,
}

impl Tag {
    pub fn letter(self) -> char {
        match self {
            Tag::Pendant => 'a',
            Tag::Bipartite => 'b',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub graph: Graph,
    pub attach: usize,
    pub tag: Tag,
}

impl Part {
    pub fn new(graph: Graph, attach: usize, tag: Tag) -> Self {
        Part { graph, attach, tag }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarJoinSpec {
    parts: Vec<Part>,
}

impl StarJoinSpec {
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::input(format!(
                "a star-join needs at least 2 parts, got {}",
                parts.len()
            )));
        }
        for (i, part) in parts.iter().enumerate() {
            if part.attach >= part.graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: part.attach,
                    n: part.graph.n(),
                });
            }
            if !part.graph.is_connected() {
                return Err(Error::input(format!("part {} is not connected", i + 1)));
            }
        }
        let total: usize = parts.iter().map(|p| p.graph.n()).sum::<usize>() + 1;
        if total > MAX_VERTICES {
            return Err(Error::Capacity {
                needed: total,
                max: MAX_VERTICES,
            });
        }
        Ok(StarJoinSpec { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// The joined graph. Part `i` keeps its vertex order at an offset; the hub is last.
/// Labels are `H<i>.<label>` and `v` for the hub.
pub fn star_join(spec: &StarJoinSpec) -> Result<Graph> {
    let n: usize = spec.parts.iter().map(|p| p.graph.n()).sum::<usize>() + 1;
    let hub = n - 1;
    let mut b = GraphBuilder::new(n)?;
    let mut labels = Vec::with_capacity(n);
    let mut offset = 0;
    for (i, part) in spec.parts.iter().enumerate() {
        for (u, v) in part.graph.edges() {
            b.add_edge(offset + u, offset + v)?;
        }
        b.add_edge(offset + part.attach, hub)?;
        labels.extend((0..part.graph.n()).map(|v| format!("H{}.{}", i + 1, part.graph.label(v))));
        offset += part.graph.n();
    }
    labels.push("v".to_string());
    b.build().with_labels(labels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartCheck {
    /// 1-based part index.
    pub part: usize,
    pub tag: Tag,
    pub ind_match_is_one: bool,
    /// (*1) at the attach vertex for tag (a), complete bipartite for tag (b);
    /// (*2) at the attach vertex in the min-match report.
    pub condition: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub parts: Vec<PartCheck>,
    pub pass: bool,
}

impl HypothesisReport {
    fn new(parts: Vec<PartCheck>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        HypothesisReport { parts, pass }
    }

    pub fn first_failure(&self) -> Option<&PartCheck> {
        self.parts.iter().find(|p| !p.pass)
    }
}

/// Every part has induced matching number 1 and meets its tagged alternative.
pub fn check_thm_ind_hypotheses(spec: &StarJoinSpec, budget: &SolverBudget) -> Result<HypothesisReport> {
    let mut out = Vec::with_capacity(spec.len());
    for (i, part) in spec.parts.iter().enumerate() {
        let ind1 = induced_matching_number(&part.graph, budget)? == 1;
        let condition = match part.tag {
            Tag::Pendant => satisfies_star1(&part.graph, part.attach)?,
            Tag::Bipartite => part.graph.is_complete_bipartite(),
        };
        out.push(PartCheck {
            part: i + 1,
            tag: part.tag,
            ind_match_is_one: ind1,
            condition,
            pass: ind1 && condition,
        });
    }
    Ok(HypothesisReport::new(out))
}

/// Every attach vertex satisfies (*2). The induced matching number is reported but not required.
pub fn check_thm_min_hypotheses(spec: &StarJoinSpec, budget: &SolverBudget) -> Result<HypothesisReport> {
    let mut out = Vec::with_capacity(spec.len());
    for (i, part) in spec.parts.iter().enumerate() {
        let ind1 = induced_matching_number(&part.graph, budget)? == 1;
        let condition = satisfies_star2(&part.graph, part.attach, budget)?;
        out.push(PartCheck {
            part: i + 1,
            tag: part.tag,
            ind_match_is_one: ind1,
            condition,
            pass: condition,
        });
    }
    Ok(HypothesisReport::new(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub triple: InvariantTriple,
    /// `r` comes from the perfect matchings of the parts rather than a solver run.
    pub match_predicted: bool,
}

/// `(s, Σ min-match(H_i), Σ |V(H_i)|/2)`; the last entry is computed on the
/// joined graph unless every part has a perfect matching.
pub fn predicted_invariants(spec: &StarJoinSpec, budget: &SolverBudget) -> Result<Prediction> {
    for (name, report) in [
        ("induced-matching", check_thm_ind_hypotheses(spec, budget)?),
        ("min-match", check_thm_min_hypotheses(spec, budget)?),
    ] {
        if let Some(f) = report.first_failure() {
            return Err(Error::Precondition(format!(
                "part {} fails the {name} hypothesis (tag {})",
                f.part,
                f.tag.letter()
            )));
        }
    }
    let mut q = 0;
    for part in &spec.parts {
        q += min_maximal_matching_number(&part.graph, budget)?;
    }
    let all_perfect = spec.parts.iter().all(|p| has_perfect_matching(&p.graph));
    let r = if all_perfect {
        spec.parts.iter().map(|p| p.graph.n() / 2).sum()
    } else {
        matching_number(&star_join(spec)?)
    };
    Ok(Prediction {
        triple: InvariantTriple::new(spec.len(), q, r),
        match_predicted: all_perfect,
    })
}

fn kaa(a: usize) -> Result<Part> {
    Ok(Part::new(complete_bipartite(a, a)?, 0, Tag::Bipartite))
}

fn gr_part(m: usize) -> Result<Part> {
    // x_1 carries the pendant y_1
    Ok(Part::new(g_r(m)?, 0, Tag::Pendant))
}

fn k2() -> Result<Part> {
    Ok(Part::new(complete(2)?, 0, Tag::Pendant))
}

/// Witness for `(p, q, q)`, `2 <= p < q`: copies of `K_{a,a}` and `K_{a+1,a+1}` with `q = ap + b`.
pub fn thm34_1(p: usize, q: usize) -> Result<StarJoinSpec> {
    bound34_1(p, q)?;
    let d = divide(q as u64, p as u64)?;
    let (a, b) = (d.a as usize, d.b as usize);
    let mut parts = Vec::with_capacity(p);
    for _ in 0..p - b {
        parts.push(kaa(a)?);
    }
    for _ in 0..b {
        parts.push(kaa(a + 1)?);
    }
    StarJoinSpec::new(parts)
}

/// Witness for `q < r <= 2q-p+1`: `p-1` complete bipartite parts from `2q-r = a(p-1) + b`, then `G_{2(r-q)}`.
pub fn thm34_2(p: usize, q: usize, r: usize) -> Result<StarJoinSpec> {
    bound34_2(p, q, r)?;
    let d = divide((2 * q - r) as u64, (p - 1) as u64)?;
    let (a, b) = (d.a as usize, d.b as usize);
    let mut parts = Vec::with_capacity(p);
    for _ in 0..p - b - 1 {
        parts.push(kaa(a)?);
    }
    for _ in 0..b {
        parts.push(kaa(a + 1)?);
    }
    parts.push(gr_part(2 * (r - q))?);
    StarJoinSpec::new(parts)
}

/// Witness for `2q-p+1 < r <= 2q`: copies of `G_{2a}`, `G_{2a+2}` from
/// `r-q = a(p-2q+r) + b`, then `2q-r` copies of `K_2`.
pub fn thm34_3(p: usize, q: usize, r: usize) -> Result<StarJoinSpec> {
    bound34_3(p, q, r)?;
    let m = p + r - 2 * q;
    let d = divide((r - q) as u64, m as u64)?;
    let (a, b) = (d.a as usize, d.b as usize);
    let mut parts = Vec::with_capacity(p);
    for _ in 0..m - b {
        parts.push(gr_part(2 * a)?);
    }
    for _ in 0..b {
        parts.push(gr_part(2 * a + 2)?);
    }
    for _ in 0..2 * q - r {
        parts.push(k2()?);
    }
    StarJoinSpec::new(parts)
}

/// Which of the three star-join cases covers `(p, q, r)` with `2 <= p < q <= r <= 2q`.
pub fn thm34_case(t: InvariantTriple) -> Option<u8> {
    let InvariantTriple { p, q, r } = t;
    if !(t.is_feasible() && p >= 2 && p < q) {
        return None;
    }
    Some(if r == q {
        1
    } else if r + p <= 2 * q + 1 {
        2
    } else {
        3
    })
}

pub fn thm34_spec(t: InvariantTriple) -> Result<StarJoinSpec> {
    match thm34_case(t) {
        Some(1) => thm34_1(t.p, t.q),
        Some(2) => thm34_2(t.p, t.q, t.r),
        Some(3) => thm34_3(t.p, t.q, t.r),
        _ => Err(Error::input(format!("{t} needs 2 <= p < q <= r <= 2q"))),
    }
}

pub fn thm34_bound(t: InvariantTriple) -> Result<u64> {
    match thm34_case(t) {
        Some(1) => bound34_1(t.p, t.q),
        Some(2) => bound34_2(t.p, t.q, t.r),
        Some(3) => bound34_3(t.p, t.q, t.r),
        _ => Err(Error::input(format!("{t} needs 2 <= p < q <= r <= 2q"))),
    }
}

/// Best closed-form upper bound on the size of a connected graph realising a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBound {
    pub value: u64,
    /// The bound is known to be attained with equality.
    pub exact: bool,
    pub source: String,
}

pub fn edge_upper_bound(t: InvariantTriple) -> Result<EdgeBound> {
    t.require_feasible()?;
    let InvariantTriple { p, q, r } = t;
    let (q64, r64) = (q as u64, r as u64);
    let eb = |value: u64, exact: bool, source: &str| EdgeBound {
        value,
        exact,
        source: source.to_string(),
    };
    Ok(if r == 1 {
        eb(1, true, "K2")
    } else if p == q && q == r {
        eb(2 * r64, true, "g3")
    } else if p == q {
        eb(2 * r64 - 1, true, if r == q + 1 { "g1" } else { "g2" })
    } else if p == 1 {
        if r == 2 * q {
            eb(binom2(2 * q64 + 1), true, "gr")
        } else if r + 1 == 2 * q {
            eb(binom2(2 * q64), true, "gr")
        } else if r == q {
            eb(q64 * q64, false, "Kqq")
        } else if r == q + 1 {
            eb(q64 * q64 + 2, false, "g4")
        } else {
            let (a, b) = (f1(q, r)?, f2(q, r)?);
            if a <= b {
                eb(a, false, "g5")
            } else {
                eb(b, false, "f2")
            }
        }
    } else {
        let case = thm34_case(t).expect("2 <= p < q");
        eb(thm34_bound(t)?, false, ["", "thm34-1", "thm34-2", "thm34-3"][case as usize])
    })
}

/// A connected graph with triple `t`, built from the closed-form families.
/// `None` only when the best bound comes from `f2`, whose graph is not constructed here.
pub fn bound_witness(t: InvariantTriple) -> Result<Option<Graph>> {
    let InvariantTriple { p, q, r } = t;
    let bound = edge_upper_bound(t)?;
    let g = match bound.source.as_str() {
        "K2" => complete(2)?,
        "g3" => g3(r)?,
        "g1" if q >= 2 => g1(q)?,
        // (1,1,2): the path on four vertices
        "g1" => g_r(2)?,
        "g2" => g2(q, r)?,
        "gr" => g_r(r)?,
        "Kqq" => complete_bipartite(q, q)?,
        "g4" => g4(q)?,
        "g5" => g5(q, r)?,
        "f2" => return Ok(None),
        _ => star_join(&thm34_spec(InvariantTriple::new(p, q, r))?)?,
    };
    Ok(Some(g))
}
