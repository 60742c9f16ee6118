//! Exhaustive searches over connected graphs: census by invariant triple,
//! least order and least size realising a triple, and batch claim checks.

mod enumerate;
mod verify;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::composition::edge_upper_bound;
use crate::constructions::binom2;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{
    induced_matching_number, matching_number, min_maximal_matching_number, triple,
    InvariantTriple, SolverBudget,
};

pub use enumerate::{
    enumerate_connected_graphs, enumerate_trees, within_envelope, ConnectedGraphs, MAX_ORDER,
    MAX_TREE_ORDER,
};
pub use verify::{
    exact_min_edges, expected_min_vertices, feasible_triples, BoundCheck, BoundScope,
    BoundsReport, Claim, ClaimCheck, ConditionalRow, Outcome, TreeCounterexample, TreeOrderRow,
    TreeReport, VerifyReport, VerifyScope,
};

use enumerate::{check_envelope, frontier, walk};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Subtrees are rooted this many levels above the target order.
    pub split_depth: usize,
    /// Witnesses kept per result.
    pub witnesses: usize,
    /// Budget for each solver call on each graph.
    pub budget: SolverBudget,
    /// Use the proven lower bounds on the size to stop edge searches early.
    pub proven_floors: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            workers: None,
            split_depth: 2,
            witnesses: 3,
            budget: SolverBudget::UNLIMITED,
            proven_floors: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Vertices,
    Edges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// `value` is the proven minimum.
    Certified,
    /// Nothing realises the target within the budget, and the scan was complete.
    NoneWithinBudget,
    /// The scan stopped early (envelope or solver budget).
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: InvariantTriple,
    pub objective: Objective,
    pub status: Status,
    pub value: Option<u64>,
    /// Proven lower bound on the true minimum.
    pub lower_bound: u64,
    /// Best value found, certified or not.
    pub upper_bound: Option<u64>,
    pub budget: u64,
    /// Canonical graph6 strings, least size first.
    pub witnesses: Vec<String>,
    pub scanned: u64,
    pub elapsed: f64,
    pub note: Option<String>,
}

impl SearchReport {
    /// Copy with timing zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> SearchReport {
        SearchReport {
            elapsed: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    #[serde(flatten)]
    pub triple: InvariantTriple,
    pub count: u64,
    pub min_edges: usize,
    pub witnesses: Vec<String>,
}

/// Connected graphs of one order grouped by invariant triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub graphs: u64,
    pub rows: Vec<CensusRow>,
}

impl Census {
    pub fn row(&self, t: InvariantTriple) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.triple == t)
    }
}

/// Least-first list of `(edges, canonical key)` capped at `cap` entries.
#[derive(Clone, Debug, Default)]
struct Witnesses {
    cap: usize,
    items: Vec<(usize, String)>,
}

impl Witnesses {
    fn new(cap: usize) -> Self {
        Witnesses {
            cap,
            items: Vec::new(),
        }
    }

    fn wants(&self, edges: usize) -> bool {
        self.cap > 0
            && (self.items.len() < self.cap || self.items.last().is_some_and(|w| edges <= w.0))
    }

    fn offer(&mut self, g: &Graph) {
        let e = g.edge_count();
        if self.wants(e) {
            self.insert((e, canonical_form(g)));
        }
    }

    fn insert(&mut self, item: (usize, String)) {
        let at = self.items.binary_search(&item).unwrap_or_else(|i| i);
        self.items.insert(at, item);
        self.items.truncate(self.cap);
    }

    fn merge(&mut self, other: Witnesses) {
        for it in other.items {
            self.insert(it);
        }
    }

    fn keys(&self) -> Vec<String> {
        self.items.iter().map(|w| w.1.clone()).collect()
    }
}

#[derive(Clone, Debug)]
struct RowAcc {
    count: u64,
    min_edges: usize,
    witnesses: Witnesses,
}

/// Runs searches with shared configuration and a per-order census cache.
pub struct Searcher {
    config: SearchConfig,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
    census: Mutex<HashMap<usize, Arc<Census>>>,
}

impl Searcher {
    pub fn new(config: SearchConfig) -> Result<Self> {
        config.budget.validate()?;
        if config.workers == Some(0) {
            return Err(Error::input("worker count must be positive"));
        }
        #[cfg(feature = "parallel")]
        let pool = match config.workers {
            Some(w) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::Internal(format!("thread pool: {e}")))?,
            ),
            None => None,
        };
        Ok(Searcher {
            config,
            #[cfg(feature = "parallel")]
            pool,
            census: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    /// Visit every connected graph of order `n` (at most `max_edges` edges),
    /// split into subtrees that run in parallel. Returns one accumulator per
    /// subtree, in generation order.
    pub(crate) fn scan<A, M, F>(&self, n: usize, max_edges: Option<usize>, make: M, visit: F) -> Result<Vec<A>>
    where
        A: Send,
        M: Fn() -> A + Sync,
        F: Fn(&mut A, &Graph) -> Result<()> + Sync,
    {
        check_envelope(n, max_edges)?;
        let level = n.saturating_sub(self.config.split_depth).max(1);
        let roots = frontier(level, n, max_edges);
        let job = |root: &Graph| -> Result<A> {
            let mut acc = make();
            walk(root, n, max_edges, &mut |g| visit(&mut acc, g))?;
            Ok(acc)
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let run = || roots.par_iter().map(job).collect::<Result<Vec<A>>>();
            match &self.pool {
                Some(p) => p.install(run),
                None => run(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            roots.iter().map(job).collect()
        }
    }

    /// Census of order `n`, computed once per searcher.
    pub fn census(&self, n: usize) -> Result<Arc<Census>> {
        if let Some(c) = self.census.lock().expect("census cache").get(&n) {
            return Ok(c.clone());
        }
        let cap = self.config.witnesses;
        let budget = self.config.budget;
        let parts = self.scan(
            n,
            None,
            || (0u64, BTreeMap::<InvariantTriple, RowAcc>::new()),
            |(seen, rows), g| {
                *seen += 1;
                if g.edge_count() == 0 {
                    return Ok(());
                }
                let t = triple(g, &budget)?;
                let e = g.edge_count();
                let row = rows.entry(t).or_insert_with(|| RowAcc {
                    count: 0,
                    min_edges: usize::MAX,
                    witnesses: Witnesses::new(cap),
                });
                row.count += 1;
                row.min_edges = row.min_edges.min(e);
                row.witnesses.offer(g);
                Ok(())
            },
        )?;
        let mut graphs = 0;
        let mut all: BTreeMap<InvariantTriple, RowAcc> = BTreeMap::new();
        for (seen, rows) in parts {
            graphs += seen;
            for (t, acc) in rows {
                match all.get_mut(&t) {
                    Some(a) => {
                        a.count += acc.count;
                        a.min_edges = a.min_edges.min(acc.min_edges);
                        a.witnesses.merge(acc.witnesses);
                    }
                    None => {
                        all.insert(t, acc);
                    }
                }
            }
        }
        let census = Arc::new(Census {
            n,
            graphs,
            rows: all
                .into_iter()
                .map(|(t, a)| CensusRow {
                    n,
                    triple: t,
                    count: a.count,
                    min_edges: a.min_edges,
                    witnesses: a.witnesses.keys(),
                })
                .collect(),
        });
        self.census
            .lock()
            .expect("census cache")
            .insert(n, census.clone());
        Ok(census)
    }

    /// Least order of a connected graph with triple `t`, scanning orders up to `n_budget`.
    pub fn min_vertices(&self, t: InvariantTriple, n_budget: usize) -> Result<SearchReport> {
        t.require_feasible()?;
        let start = Instant::now();
        let first = 2 * t.r;
        let mut report = SearchReport {
            target: t,
            objective: Objective::Vertices,
            status: Status::NoneWithinBudget,
            value: None,
            lower_bound: first as u64,
            upper_bound: None,
            budget: n_budget as u64,
            witnesses: Vec::new(),
            scanned: 0,
            elapsed: 0.0,
            note: None,
        };
        for n in first..=n_budget {
            if !within_envelope(n, None) {
                report.status = Status::Inconclusive;
                report.note = Some(format!("order {n} is outside the enumeration envelope"));
                break;
            }
            let census = match self.census(n) {
                Ok(c) => c,
                Err(e @ Error::Budget { .. }) => {
                    report.status = Status::Inconclusive;
                    report.note = Some(format!("order {n}: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            };
            report.scanned += census.graphs;
            if let Some(row) = census.row(t) {
                report.status = Status::Certified;
                report.value = Some(n as u64);
                report.upper_bound = Some(n as u64);
                report.witnesses = row.witnesses.clone();
                break;
            }
            report.lower_bound = n as u64 + 1;
        }
        report.elapsed = start.elapsed().as_secs_f64();
        Ok(report)
    }

    /// Least size of a connected graph with triple `t`, searching sizes up to
    /// `edge_budget` (default: the closed-form upper bound for `t`).
    pub fn min_edges(&self, t: InvariantTriple, edge_budget: Option<u64>) -> Result<SearchReport> {
        t.require_feasible()?;
        let start = Instant::now();
        let budget = match edge_budget {
            Some(b) => b,
            None => edge_upper_bound(t)?.value,
        } as usize;
        let floor = if self.config.proven_floors {
            edge_floor(t)
        } else {
            1
        };
        let cap_w = self.config.witnesses;
        let solver = self.config.budget;
        let mut best: Option<usize> = None;
        let mut witnesses = Witnesses::new(cap_w);
        let mut scanned = 0u64;
        let mut status = Status::NoneWithinBudget;
        let mut note = None;
        let mut n = 2 * t.r;
        loop {
            let cap = best.unwrap_or(budget);
            if n - 1 > cap || best == Some(floor) {
                break;
            }
            if !within_envelope(n, Some(cap)) {
                status = Status::Inconclusive;
                note = Some(format!("order {n} with at most {cap} edges is outside the enumeration envelope"));
                break;
            }
            let parts = self.scan(
                n,
                Some(cap),
                || (0u64, None::<usize>, Witnesses::new(cap_w)),
                |(seen, low, wit), g| {
                    *seen += 1;
                    let e = g.edge_count();
                    if low.is_some_and(|l| e > l) || matching_number(g) != t.r {
                        return Ok(());
                    }
                    if min_maximal_matching_number(g, &solver)? != t.q
                        || induced_matching_number(g, &solver)? != t.p
                    {
                        return Ok(());
                    }
                    if low.is_none_or(|l| e < l) {
                        *low = Some(e);
                        *wit = Witnesses::new(cap_w);
                    }
                    wit.offer(g);
                    Ok(())
                },
            );
            let parts = match parts {
                Ok(p) => p,
                Err(e @ Error::Budget { .. }) => {
                    status = Status::Inconclusive;
                    note = Some(format!("order {n}: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            };
            for (seen, low, wit) in parts {
                scanned += seen;
                let Some(l) = low else { continue };
                match best {
                    Some(b) if l > b => {}
                    Some(b) if l == b => witnesses.merge(wit),
                    _ => {
                        best = Some(l);
                        witnesses = wit;
                    }
                }
            }
            n += 1;
        }
        let lower = match (status, best) {
            (Status::Inconclusive, _) => {
                // orders below n were scanned completely; larger ones need n - 1 edges
                floor.max((n - 1).min(best.unwrap_or(budget + 1)))
            }
            (_, Some(b)) => {
                status = Status::Certified;
                b
            }
            (_, None) => budget + 1,
        };
        Ok(SearchReport {
            target: t,
            objective: Objective::Edges,
            status,
            value: if status == Status::Certified { best.map(|b| b as u64) } else { None },
            lower_bound: lower as u64,
            upper_bound: best.map(|b| b as u64),
            budget: budget as u64,
            witnesses: witnesses.keys(),
            scanned,
            elapsed: start.elapsed().as_secs_f64(),
            note,
        })
    }
}

/// Proven lower bound on the size of a connected graph with triple `t`:
/// `2r - 1` in general, `2r` when `q = r` and `p >= 2`, and `C(r+1, 2)` when `p = 1`.
pub fn edge_floor(t: InvariantTriple) -> usize {
    let r = t.r;
    let mut f = 2 * r - 1;
    if t.q == t.r && t.p >= 2 {
        f = 2 * r;
    }
    if t.p == 1 {
        f = f.max(binom2(r as u64 + 1) as usize);
    }
    f
}
