//! Acceptance run: one PASS/FAIL line per criterion, each with a pinned time limit.
//! All value checks are exact.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::spec_from_codes;
use eml_core::composition::{predicted_invariants, star_join, thm34_case, thm34_spec};
use eml_core::constructions::{
    binom2, bound34_1, bound34_2, bound34_3, complete, cycle, f1, f2, g1, g2, g3, g4, g5, g_r,
};
use eml_core::invariants::{
    brute_force_invariants, enumerate_maximal_matchings, independence_number, induced_matching_number,
    matching_number, maximum_induced_matching, min_maximal_matching_number, satisfies_star1,
};
use eml_core::search::{
    edge_floor, enumerate_connected_graphs, feasible_triples, expected_min_vertices, SearchConfig,
    SearchReport, Searcher, Status,
};
use eml_core::{triple, Graph, InvariantTriple, Matching, SolverBudget, VertexSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const B: SolverBudget = SolverBudget::UNLIMITED;

type Check = Result<String, String>;

fn t(p: usize, q: usize, r: usize) -> InvariantTriple {
    InvariantTriple::new(p, q, r)
}

fn expect_graph(name: &str, g: &Graph, want: InvariantTriple, edges: u64) -> Result<(), String> {
    let got = triple(g, &B).map_err(|e| format!("{name}: {e}"))?;
    if got != want || g.edge_count() as u64 != edges {
        return Err(format!(
            "{name}: triple {got} with {} edges, expected {want} with {edges}",
            g.edge_count()
        ));
    }
    Ok(())
}

fn small_graph_values() -> Check {
    let k4 = complete(4).unwrap();
    let c5 = cycle(5).unwrap();
    expect_graph("K4", &k4, t(1, 2, 2), 6)?;
    expect_graph("C5", &c5, t(1, 2, 2), 5)?;
    if k4.n() != 4 || c5.n() != 5 {
        return Err("wrong orders".into());
    }
    Ok("K4 and C5 both (1,2,2); sizes (4,6) and (5,5)".into())
}

fn whiskered_complete() -> Check {
    for r in 2..=12 {
        expect_graph(&format!("g_r({r})"), &g_r(r).unwrap(), t(1, r.div_ceil(2), r), binom2(r as u64 + 1))?;
    }
    Ok("r = 2..12".into())
}

fn sparse_families() -> Check {
    let mut count = 0;
    for q in 2..=8 {
        expect_graph(&format!("g1({q})"), &g1(q).unwrap(), t(q, q, q + 1), 2 * q as u64 + 1)?;
        count += 1;
        for r in q + 2..=2 * q {
            let g = g2(q, r).unwrap();
            if !g.is_tree() {
                return Err(format!("g2({q},{r}) is not a tree"));
            }
            expect_graph(&format!("g2({q},{r})"), &g, t(q, q, r), 2 * r as u64 - 1)?;
            count += 1;
        }
    }
    for r in 2..=8 {
        expect_graph(&format!("g3({r})"), &g3(r).unwrap(), t(r, r, r), 2 * r as u64)?;
        count += 1;
    }
    Ok(format!("{count} graphs"))
}

fn dense_families() -> Check {
    let mut count = 0;
    for q in 2..=7 {
        expect_graph(&format!("g4({q})"), &g4(q).unwrap(), t(1, q, q + 1), (q * q) as u64 + 2)?;
        count += 1;
    }
    for q in 4..=7 {
        for r in q + 2..=2 * q - 2 {
            expect_graph(&format!("g5({q},{r})"), &g5(q, r).unwrap(), t(1, q, r), f1(q, r).unwrap())?;
            count += 1;
        }
    }
    Ok(format!("{count} graphs"))
}

fn f_values() -> Check {
    let got = [f1(10, 17), f2(10, 17), f1(10, 18), f2(10, 18)].map(|v| v.unwrap());
    if got != [189, 204, 207, 206] {
        return Err(format!("got {got:?}"));
    }
    Ok("189, 204, 207, 206".into())
}

fn star_join_grid() -> Check {
    let mut per_case = [0; 3];
    for r in 2usize..=8 {
        for q in r.div_ceil(2)..=r {
            for p in 2..q.min(5) {
                let tr = t(p, q, r);
                let case = thm34_case(tr).ok_or(format!("{tr} has no case"))?;
                let bound = match case {
                    1 => bound34_1(p, q),
                    2 => bound34_2(p, q, r),
                    _ => bound34_3(p, q, r),
                }
                .unwrap();
                let g = star_join(&thm34_spec(tr).unwrap()).unwrap();
                expect_graph(&format!("case {case} {tr}"), &g, tr, bound)?;
                per_case[case as usize - 1] += 1;
            }
        }
    }
    for p in 2..=3 {
        let got = [
            bound34_1(p, p + 1).unwrap(),
            bound34_2(p, p + 1, p + 2).unwrap(),
            bound34_3(p, p + 1, p + 4).unwrap(),
        ];
        let want = [2 * p as u64 + 3, 2 * p as u64 + 5, 2 * p as u64 + 11];
        if got != want {
            return Err(format!("p = {p}: bounds {got:?}, expected {want:?}"));
        }
    }
    Ok(format!(
        "cases 1/2/3: {}/{}/{} triples; 2p+3, 2p+5, 2p+11 at p = 2, 3",
        per_case[0], per_case[1], per_case[2]
    ))
}

fn least_orders(s: &Searcher) -> Result<Vec<SearchReport>, String> {
    feasible_triples(4)
        .into_iter()
        .map(|tr| s.min_vertices(tr, 9).map_err(|e| format!("{tr}: {e}")))
        .collect()
}

fn least_orders_check(reports: &[SearchReport]) -> Check {
    let mut scanned = 0;
    for rep in reports {
        let want = expected_min_vertices(rep.target) as u64;
        if rep.status != Status::Certified || rep.value != Some(want) {
            return Err(format!("{}: {:?} {:?}, expected {want}", rep.target, rep.status, rep.value));
        }
        for w in &rep.witnesses {
            let g = eml_core::parse_graph6(w).map_err(|e| e.to_string())?;
            if !g.is_connected() || g.n() as u64 != want || triple(&g, &B).ok() != Some(rep.target) {
                return Err(format!("{}: witness {w} does not re-verify", rep.target));
            }
        }
        scanned += rep.scanned;
    }
    Ok(format!("{} triples certified, {scanned} graph visits", reports.len()))
}

fn least_sizes() -> Check {
    let want = [
        (t(1, 1, 1), 1),
        (t(1, 2, 3), 6),
        (t(1, 2, 4), 10),
        (t(2, 2, 3), 5),
        (t(2, 2, 4), 7),
        (t(3, 3, 4), 7),
        (t(2, 2, 2), 4),
        (t(3, 3, 3), 6),
    ];
    let mut notes = Vec::new();
    for proven_floors in [true, false] {
        let s = Searcher::new(SearchConfig {
            proven_floors,
            ..SearchConfig::default()
        })
        .unwrap();
        let mut scanned = 0;
        for &(tr, v) in &want {
            let rep = s.min_edges(tr, None).map_err(|e| format!("{tr}: {e}"))?;
            if rep.status != Status::Certified || rep.value != Some(v) {
                return Err(format!(
                    "{tr} (floors {proven_floors}): {:?} {:?}, expected {v}",
                    rep.status, rep.value
                ));
            }
            for w in &rep.witnesses {
                let g = eml_core::parse_graph6(w).unwrap();
                if g.edge_count() as u64 != v || triple(&g, &B).ok() != Some(tr) || !g.is_connected() {
                    return Err(format!("{tr}: witness {w} does not re-verify"));
                }
            }
            scanned += rep.scanned;
        }
        notes.push(format!("floors {proven_floors}: {scanned} graphs"));
    }
    Ok(format!("8 values certified ({})", notes.join(", ")))
}

fn brute_alpha(g: &Graph) -> usize {
    (0u64..1 << g.n())
        .filter(|&s| g.is_independent(VertexSet(s)).unwrap())
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn exhaustive_properties(s: &Searcher) -> Check {
    let mut graphs = 0;
    let mut violations: Vec<String> = Vec::new();
    let mut note = |what: &str, g: &Graph| {
        if violations.len() < 5 {
            violations.push(format!("{what} on {}", eml_core::emit_graph6(g)));
        }
    };
    let mut small = Vec::new();
    for n in 1..=7 {
        for g in enumerate_connected_graphs(n, None).unwrap() {
            graphs += 1;
            if n <= 5 {
                small.push(g.clone());
            }
            let alpha = independence_number(&g, &B).unwrap();
            if alpha != brute_alpha(&g) {
                note("independence number", &g);
            }
            if g.edge_count() == 0 {
                continue;
            }
            let tr = triple(&g, &B).unwrap();
            if tr != brute_force_invariants(&g).unwrap() {
                note("solver vs brute force", &g);
            }
            if !tr.is_feasible() || 2 * tr.r > n {
                note("chain", &g);
            }
            for m in enumerate_maximal_matchings(&g, None) {
                let a = g.is_maximal_matching(&m).unwrap();
                let b = g.is_maximal_matching_by_extension(&m).unwrap();
                if !(a && b) || alpha + 2 * m.len() < n {
                    note("maximal matching tests", &g);
                }
                for skip in 0..m.len() {
                    let sub = Matching::new(m.edges().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e));
                    if g.is_maximal_matching(&sub).unwrap() != g.is_maximal_matching_by_extension(&sub).unwrap() {
                        note("maximality tests disagree", &g);
                    }
                }
            }
            if n - alpha > 2 * tr.q {
                note("independence vs min-match", &g);
            }
            for w in 0u64..1 << n {
                let h = g.induced_subgraph(VertexSet(w)).unwrap();
                if matching_number(&h) > tr.r
                    || min_maximal_matching_number(&h, &B).unwrap() > tr.q
                    || induced_matching_number(&h, &B).unwrap() > tr.p
                {
                    note("induced subgraph monotonicity", &g);
                }
            }
            let all = g.vertices();
            if tr.p == 1 {
                if (g.edge_count() as u64) < binom2(tr.r as u64 + 1) {
                    note("size bound for induced matching number one", &g);
                }
                for v in 0..n {
                    let rest = all.difference(g.closed_neighborhood(v).unwrap());
                    if satisfies_star1(&g, v).unwrap() && !g.is_independent(rest).unwrap() {
                        note("pendant-neighbour independence", &g);
                    }
                }
            } else {
                let im = maximum_induced_matching(&g, &B).unwrap();
                for v in im.vertices().iter() {
                    let rest = all.difference(g.closed_neighborhood(v).unwrap());
                    if g.is_independent(rest).unwrap() {
                        note("induced matching vertex independence", &g);
                    }
                }
            }
        }
    }
    for a in &small {
        for b in &small {
            let u = a.disjoint_union(b).unwrap();
            let sum = |f: &dyn Fn(&Graph) -> usize| f(a) + f(b);
            if matching_number(&u) != sum(&matching_number)
                || min_maximal_matching_number(&u, &B).unwrap() != sum(&|h| min_maximal_matching_number(h, &B).unwrap())
                || induced_matching_number(&u, &B).unwrap() != sum(&|h| induced_matching_number(h, &B).unwrap())
            {
                note("additivity", &u);
            }
        }
    }
    // census-level claims up to order 8
    let mut least_n: BTreeMap<InvariantTriple, usize> = BTreeMap::new();
    let mut least_e: BTreeMap<InvariantTriple, usize> = BTreeMap::new();
    for n in 2..=8 {
        let census = s.census(n).unwrap();
        for row in &census.rows {
            let tr = row.triple;
            if tr.p >= 2 && tr.q == tr.r && 2 * tr.r == n {
                violations.push(format!("perfect matching with {tr} at order {n}"));
            }
            if tr.p >= 2 && row.min_edges < edge_floor(tr) {
                violations.push(format!("{tr} with {} edges at order {n}", row.min_edges));
            }
            least_n.entry(tr).or_insert(n);
            let e = least_e.entry(tr).or_insert(row.min_edges);
            *e = (*e).min(row.min_edges);
        }
    }
    for (tr, &n) in &least_n {
        if least_e[tr] + 1 < n {
            violations.push(format!("{tr}: least size {} below least order {n} minus one", least_e[tr]));
        }
    }
    if violations.is_empty() {
        Ok(format!(
            "{graphs} graphs to order 7, {} unions, {} triples from censuses to order 8; 0 violations",
            small.len() * small.len(),
            least_n.len()
        ))
    } else {
        Err(violations.join("; "))
    }
}

fn random_star_joins() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut accepted = 0;
    let mut tried = 0;
    while accepted < 500 {
        tried += 1;
        let s = rng.gen_range(2..=4);
        let codes: Vec<(u8, u8, u8)> = (0..s).map(|_| (rng.gen(), rng.gen(), rng.gen())).collect();
        let spec = spec_from_codes(&codes);
        let Ok(pred) = predicted_invariants(&spec, &B) else { continue };
        accepted += 1;
        let g = star_join(&spec).unwrap();
        let got = triple(&g, &B).unwrap();
        let sum_q: usize = spec
            .parts()
            .iter()
            .map(|p| min_maximal_matching_number(&p.graph, &B).unwrap())
            .sum();
        if got.p != s || got.q != sum_q || got != pred.triple {
            return Err(format!(
                "{}: solver {got}, predicted {}",
                eml_core::emit_graph6(&g),
                pred.triple
            ));
        }
    }
    Ok(format!("500 hypothesis-passing specs out of {tried} drawn; 0 violations"))
}

fn trees(s: &Searcher) -> Check {
    let rep = s.tree_conjecture_check(14).map_err(|e| e.to_string())?;
    Ok(match rep.counterexample {
        None => format!("no counterexample among {} trees to order 14", rep.trees),
        Some(c) => format!(
            "counterexample {} (induced {}, minimum maximal {})",
            c.graph6, c.ind_match, c.min_match
        ),
    })
}

fn serialize(reports: &[SearchReport]) -> String {
    let stripped: Vec<_> = reports.iter().map(SearchReport::without_timing).collect();
    serde_json::to_string(&stripped).unwrap()
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |id: usize, name: &str, limit: f64, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        let (ok, detail) = match result {
            Ok(d) if secs <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} [{id:>2}] {name}: {detail} ({secs:.2}s, limit {limit}s)",
            if ok { "PASS" } else { "FAIL" }
        );
    };

    let parallel = Searcher::new(SearchConfig {
        workers: Some(8),
        ..SearchConfig::default()
    })
    .unwrap();
    let mut first_run = Vec::new();

    report(1, "K4 and C5 values", 1.0, &mut small_graph_values);
    report(2, "whiskered complete graphs", 10.0, &mut whiskered_complete);
    report(3, "sparse extremal families", 60.0, &mut sparse_families);
    report(4, "dense extremal families", 120.0, &mut dense_families);
    report(5, "f1/f2 sample values", 1.0, &mut f_values);
    report(6, "star-join witnesses and bounds", 300.0, &mut star_join_grid);
    report(7, "least orders for r <= 4", 1800.0, &mut || {
        first_run = least_orders(&parallel)?;
        least_orders_check(&first_run)
    });
    report(8, "least sizes", 600.0, &mut least_sizes);
    report(9, "exhaustive properties to order 7", 900.0, &mut || exhaustive_properties(&parallel));
    report(10, "random star-join specs", 120.0, &mut random_star_joins);
    report(11, "trees to order 14", 1200.0, &mut || trees(&parallel));
    report(12, "determinism across worker counts", 1800.0, &mut || {
        let single = Searcher::new(SearchConfig {
            workers: Some(1),
            ..SearchConfig::default()
        })
        .map_err(|e| e.to_string())?;
        let again = Searcher::new(SearchConfig {
            workers: Some(8),
            ..SearchConfig::default()
        })
        .map_err(|e| e.to_string())?;
        let a = serialize(&least_orders(&single)?);
        let b = serialize(&least_orders(&again)?);
        let c = serialize(&first_run);
        if a == b && b == c {
            Ok(format!("{} bytes identical for 1 and 8 workers", a.len()))
        } else {
            Err("reports differ".into())
        }
    });

    let conditional = parallel.conditional_theorem42_check(3);
    match conditional {
        Ok(rows) => {
            for row in rows {
                println!(
                    "INFO least size for ({},{},{}): {:?} {:?} (predicted {}, floor {})",
                    row.p,
                    row.p + 1,
                    row.p + 1,
                    row.report.status,
                    row.report.value,
                    row.predicted,
                    row.floor
                );
            }
        }
        Err(e) => println!("INFO conditional check failed to run: {e}"),
    }

    println!("{} criteria failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
