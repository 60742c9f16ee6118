//! Batch checks of the extremal values and bounds against exhaustive search.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{edge_floor, SearchReport, Searcher, Status};
use crate::composition::{edge_upper_bound, bound_witness};
use crate::constructions::binom2;
use crate::error::{Error, Result};
use crate::graph6::emit_graph6;
use crate::invariants::{induced_matching_number, min_maximal_matching_number, triple, InvariantTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    /// Least order: `2r`, or `2r + 1` when `p >= 2` and `q = r`.
    Minv,
    /// Least size for the exactly known families.
    Mine,
    /// `p >= 2` and `q = r` rule out a perfect matching.
    Notpm,
    /// Every realised size respects [`edge_floor`].
    Lowerbound,
    /// Least size is at least least order minus one.
    Mineminv,
}

impl Claim {
    pub const ALL: [Claim; 5] = [Claim::Minv, Claim::Mine, Claim::Notpm, Claim::Lowerbound, Claim::Mineminv];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Minv => "minv",
            Claim::Mine => "mine",
            Claim::Notpm => "notpm",
            Claim::Lowerbound => "lowerbound",
            Claim::Mineminv => "mineminv",
        }
    }

    pub fn parse(s: &str) -> Result<Claim> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::input(format!("unknown claim {s:?}; expected one of minv, mine, notpm, lowerbound, mineminv")))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyScope {
    pub claims: Vec<Claim>,
    /// Largest `r` for least-order checks.
    pub r_max: usize,
    /// Largest `r` for least-size checks.
    pub mine_r_max: usize,
    /// Largest order for the census-based checks.
    pub n_max: usize,
}

impl Default for VerifyScope {
    fn default() -> Self {
        VerifyScope {
            claims: Claim::ALL.to_vec(),
            r_max: 4,
            mine_r_max: 4,
            n_max: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub outcome: Outcome,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<ClaimCheck>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl VerifyReport {
    fn new(checks: Vec<ClaimCheck>) -> Self {
        let count = |o| checks.iter().filter(|c| c.outcome == o).count();
        VerifyReport {
            passed: count(Outcome::Pass),
            failed: count(Outcome::Fail),
            inconclusive: count(Outcome::Inconclusive),
            checks,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Every feasible triple with `r <= r_max`, ordered by `r`, then `q`, then `p`.
pub fn feasible_triples(r_max: usize) -> Vec<InvariantTriple> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        for q in r.div_ceil(2)..=r {
            for p in 1..=q {
                out.push(InvariantTriple::new(p, q, r));
            }
        }
    }
    out
}

pub fn expected_min_vertices(t: InvariantTriple) -> usize {
    if t.p >= 2 && t.q == t.r {
        2 * t.r + 1
    } else {
        2 * t.r
    }
}

/// Exactly known least sizes, for the triples they cover.
pub fn exact_min_edges(t: InvariantTriple) -> Option<u64> {
    let InvariantTriple { p, q, r } = t;
    let (q64, r64) = (q as u64, r as u64);
    if !t.is_feasible() {
        None
    } else if p == 1 && r == 2 * q {
        Some(binom2(2 * q64 + 1))
    } else if p == 1 && r + 1 == 2 * q {
        Some(binom2(2 * q64))
    } else if p >= 2 && p == q && q < r {
        Some(2 * r64 - 1)
    } else if p >= 2 && p == q && q == r {
        Some(2 * r64)
    } else {
        None
    }
}

fn report_check(
    claim: Claim,
    t: InvariantTriple,
    expected: u64,
    report: &SearchReport,
) -> ClaimCheck {
    let (observed, outcome, counterexample) = match (report.status, report.value) {
        (Status::Certified, Some(v)) if v == expected => (v.to_string(), Outcome::Pass, None),
        (Status::Certified, Some(v)) => (
            v.to_string(),
            Outcome::Fail,
            report.witnesses.first().cloned(),
        ),
        (Status::NoneWithinBudget, _) => (
            format!("none up to {}", report.budget),
            Outcome::Fail,
            None,
        ),
        _ => (
            format!("inconclusive (>= {})", report.lower_bound),
            Outcome::Inconclusive,
            None,
        ),
    };
    ClaimCheck {
        claim,
        instance: t.to_string(),
        expected: expected.to_string(),
        observed,
        outcome,
        counterexample,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundScope {
    pub p_max: usize,
    pub r_max: usize,
    /// Also certify the least size (and report the gap) when `r` is at most this.
    pub certify_r_max: usize,
}

impl Default for BoundScope {
    fn default() -> Self {
        BoundScope {
            p_max: 4,
            r_max: 8,
            certify_r_max: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub triple: InvariantTriple,
    pub construction: String,
    pub bound: u64,
    pub witness_edges: Option<u64>,
    pub witness_triple: Option<InvariantTriple>,
    pub certified_min: Option<u64>,
    pub gap: Option<u64>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub rows: Vec<BoundCheck>,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeOrderRow {
    pub n: usize,
    pub trees: u64,
    /// Trees with equal induced and minimum maximal matching numbers.
    pub equal: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCounterexample {
    pub graph6: String,
    pub ind_match: usize,
    pub min_match: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeReport {
    pub n_max: usize,
    pub orders: Vec<TreeOrderRow>,
    pub trees: u64,
    pub counterexample: Option<TreeCounterexample>,
    pub elapsed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalRow {
    pub p: usize,
    /// `2p + 3`, the value the conditional statement predicts.
    pub predicted: u64,
    /// `2r = 2p + 2`, the unconditional lower bound.
    pub floor: u64,
    pub report: SearchReport,
    pub outcome: Outcome,
}

impl Searcher {
    pub fn verify_theorems(&self, scope: &VerifyScope) -> Result<VerifyReport> {
        let mut checks = Vec::new();
        let mut minv: HashMap<InvariantTriple, SearchReport> = HashMap::new();
        let mut mine: HashMap<InvariantTriple, SearchReport> = HashMap::new();
        let mine_triples: Vec<_> = feasible_triples(scope.mine_r_max)
            .into_iter()
            .filter(|t| exact_min_edges(*t).is_some())
            .collect();
        let mut claims = scope.claims.clone();
        claims.sort();
        claims.dedup();
        for claim in claims {
            match claim {
                Claim::Minv => {
                    for t in feasible_triples(scope.r_max) {
                        let want = expected_min_vertices(t);
                        let rep = self.min_vertices(t, want)?;
                        checks.push(report_check(claim, t, want as u64, &rep));
                        minv.insert(t, rep);
                    }
                }
                Claim::Mine => {
                    for &t in &mine_triples {
                        let want = exact_min_edges(t).expect("filtered");
                        let rep = self.min_edges(t, Some(want))?;
                        checks.push(report_check(claim, t, want, &rep));
                        mine.insert(t, rep);
                    }
                }
                Claim::Notpm | Claim::Lowerbound => {
                    for n in 2..=scope.n_max {
                        let census = self.census(n)?;
                        let bad = census.rows.iter().find(|row| {
                            let t = row.triple;
                            if claim == Claim::Notpm {
                                t.p >= 2 && t.q == t.r && 2 * t.r == n
                            } else {
                                row.min_edges < edge_floor(t)
                            }
                        });
                        checks.push(ClaimCheck {
                            claim,
                            instance: format!("all connected graphs of order {n}"),
                            expected: "no violation".into(),
                            observed: match bad {
                                None => format!("{} graphs, no violation", census.graphs),
                                Some(row) => format!("violated by {}", row.triple),
                            },
                            outcome: if bad.is_some() { Outcome::Fail } else { Outcome::Pass },
                            counterexample: bad.and_then(|r| r.witnesses.first().cloned()),
                        });
                    }
                }
                Claim::Mineminv => {
                    for &t in &mine_triples {
                        let e = match mine.get(&t) {
                            Some(r) => r.clone(),
                            None => self.min_edges(t, exact_min_edges(t))?,
                        };
                        let v = match minv.get(&t) {
                            Some(r) => r.clone(),
                            None => self.min_vertices(t, expected_min_vertices(t))?,
                        };
                        let (outcome, observed) = match (e.value, v.value) {
                            (Some(e), Some(v)) => (
                                if e + 1 >= v { Outcome::Pass } else { Outcome::Fail },
                                format!("edges {e}, vertices {v}"),
                            ),
                            _ => (Outcome::Inconclusive, "not certified".into()),
                        };
                        checks.push(ClaimCheck {
                            claim,
                            instance: t.to_string(),
                            expected: "min edges >= min vertices - 1".into(),
                            observed,
                            outcome,
                            counterexample: None,
                        });
                    }
                }
            }
        }
        Ok(VerifyReport::new(checks))
    }

    /// Build the closed-form witness for each triple in scope that only has an
    /// upper bound, check its triple and size, and certify the true minimum where cheap.
    pub fn check_upper_bounds(&self, scope: &BoundScope) -> Result<BoundsReport> {
        let mut rows = Vec::new();
        for t in feasible_triples(scope.r_max) {
            if t.p > scope.p_max || exact_min_edges(t).is_some() || t.r < 2 || t.p == t.q {
                continue;
            }
            let bound = edge_upper_bound(t)?;
            let witness = bound_witness(t)?;
            let (witness_edges, witness_triple) = match &witness {
                Some(g) => (Some(g.edge_count() as u64), Some(triple(g, &self.config.budget)?)),
                None => (None, None),
            };
            let certified_min = if t.r <= scope.certify_r_max {
                self.min_edges(t, Some(bound.value))?.value
            } else {
                None
            };
            let witness_ok = witness_triple.is_none_or(|w| w == t)
                && witness_edges.is_none_or(|e| e == bound.value);
            let outcome = if !witness_ok || certified_min.is_some_and(|m| m > bound.value) {
                Outcome::Fail
            } else if witness.is_some() {
                Outcome::Pass
            } else {
                Outcome::Inconclusive
            };
            rows.push(BoundCheck {
                triple: t,
                construction: bound.source.clone(),
                bound: bound.value,
                witness_edges,
                witness_triple,
                certified_min,
                gap: certified_min.map(|m| bound.value.saturating_sub(m)),
                outcome,
            });
        }
        let failed = rows.iter().filter(|r| r.outcome == Outcome::Fail).count();
        Ok(BoundsReport { rows, failed })
    }

    /// Compare the induced matching number with the minimum maximal matching
    /// number on every tree of order at most `n_max`, stopping after the first
    /// order that contains a tree where they differ.
    pub fn tree_conjecture_check(&self, n_max: usize) -> Result<TreeReport> {
        if n_max == 0 || n_max > super::MAX_TREE_ORDER {
            return Err(Error::input(format!(
                "tree order must be in 1..={}",
                super::MAX_TREE_ORDER
            )));
        }
        let start = Instant::now();
        let budget = self.config.budget;
        let mut orders = vec![TreeOrderRow { n: 1, trees: 1, equal: 1 }];
        let mut counterexample = None;
        for n in 2..=n_max {
            let parts = self.scan(
                n,
                Some(n - 1),
                || (0u64, 0u64, None::<TreeCounterexample>),
                |(trees, equal, first), g| {
                    *trees += 1;
                    let p = induced_matching_number(g, &budget)?;
                    let q = min_maximal_matching_number(g, &budget)?;
                    if p == q {
                        *equal += 1;
                    } else if first.is_none() {
                        *first = Some(TreeCounterexample {
                            graph6: emit_graph6(g),
                            ind_match: p,
                            min_match: q,
                        });
                    }
                    Ok(())
                },
            )?;
            let mut row = TreeOrderRow { n, trees: 0, equal: 0 };
            for (t, e, first) in parts {
                row.trees += t;
                row.equal += e;
                if counterexample.is_none() {
                    counterexample = first;
                }
            }
            orders.push(row);
            if counterexample.is_some() {
                break;
            }
        }
        Ok(TreeReport {
            n_max,
            trees: orders.iter().map(|r| r.trees).sum(),
            orders,
            counterexample,
            elapsed: start.elapsed().as_secs_f64(),
        })
    }

    /// Certify the least size for `(p, p+1, p+1)`, `2 <= p <= p_max`, and
    /// compare with `2p + 3`.
    pub fn conditional_theorem42_check(&self, p_max: usize) -> Result<Vec<ConditionalRow>> {
        let mut rows = Vec::new();
        for p in 2..=p_max {
            let t = InvariantTriple::new(p, p + 1, p + 1);
            let predicted = 2 * p as u64 + 3;
            let floor = 2 * p as u64 + 2;
            let report = self.min_edges(t, Some(predicted))?;
            let outcome = match (report.status, report.value) {
                (Status::Certified, Some(v)) if v == predicted => Outcome::Pass,
                (Status::Certified, Some(_)) | (Status::NoneWithinBudget, _) => Outcome::Fail,
                _ => Outcome::Inconclusive,
            };
            rows.push(ConditionalRow {
                p,
                predicted,
                floor,
                report,
                outcome,
            });
        }
        Ok(rows)
    }
}
