use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use eml_core::composition::{check_thm_ind_hypotheses, check_thm_min_hypotheses, predicted_invariants, star_join};
use eml_core::invariants::{
    has_perfect_matching, independence_number, induced_matching_number, matching_number,
    maximum_independent_set, maximum_induced_matching, maximum_matching, min_maximal_matching_number,
    minimum_maximal_matching,
};
use eml_core::search::{
    enumerate_connected_graphs, enumerate_trees, BoundScope, Claim, SearchConfig, Searcher, VerifyScope,
};
use eml_core::{emit_graph6, parse_graph6, triple, Graph, Matching, SolverBudget};
use serde_json::{json, Value};

use crate::parse::{construct, feasible_triple, star_join_spec};
use crate::record::{Cache, ResultRecord};
use crate::render::render;
use crate::{Cli, Command, Format, Global, ObjectiveArg};

/// What a command computed, before timing and caching are attached.
struct Outcome {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    provenance: Option<Value>,
}

fn budget(g: &Global) -> Result<SolverBudget> {
    let b = SolverBudget {
        node_limit: g.budget_nodes,
        time_limit: g.budget_seconds,
    };
    b.validate()?;
    Ok(b)
}

fn searcher(g: &Global, proven_floors: bool) -> Result<Searcher> {
    Ok(Searcher::new(SearchConfig {
        workers: g.workers,
        split_depth: g.split_depth,
        witnesses: g.witnesses,
        budget: budget(g)?,
        proven_floors,
    })?)
}

/// Inputs that determine a search result; worker count is deliberately absent.
fn search_inputs(g: &Global, extra: Value) -> Value {
    let mut v = json!({
        "budget_nodes": g.budget_nodes,
        "budget_seconds": g.budget_seconds,
        "witnesses": g.witnesses,
        "split_depth": g.split_depth,
    });
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

/// Drop wall-clock fields so outputs are reproducible; timing lives in the record's `timing`.
fn strip_elapsed(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(
            m.into_iter()
                .filter(|(k, _)| k != "elapsed")
                .map(|(k, v)| (k, strip_elapsed(v)))
                .collect(),
        ),
        Value::Array(a) => Value::Array(a.into_iter().map(strip_elapsed).collect()),
        v => v,
    }
}

fn matching_json(m: &Matching) -> Value {
    json!(m.edges())
}

fn write_graph6(path: &Path, lines: &[String]) -> Result<()> {
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "graph6": emit_graph6(g),
        "n": g.n(),
        "m": g.edge_count(),
        "labels": (0..g.n()).map(|v| g.label(v)).collect::<Vec<_>>(),
    })
}

fn invariants(g: &Global, file: Option<&Path>, inline: &[String], optimal: bool) -> Result<Outcome> {
    let b = budget(g)?;
    let (source, text) = if !inline.is_empty() {
        ("inline".to_string(), inline.join("\n"))
    } else {
        match file {
            Some(p) if p != Path::new("-") => (
                p.display().to_string(),
                fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            ),
            _ => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                ("stdin".to_string(), s)
            }
        }
    };
    let mut results = Vec::new();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_start_matches(">>graph6<<");
        if line.is_empty() {
            continue;
        }
        match one_graph(line, &b, optimal) {
            Ok(mut v) => {
                v["line"] = json!(i + 1);
                results.push(v);
            }
            Err(e) => errors.push(json!({ "line": i + 1, "error": format!("{e:#}") })),
        }
    }
    Ok(Outcome {
        command: "invariants",
        inputs: json!({ "source": source, "optimal": optimal, "budget_nodes": g.budget_nodes, "budget_seconds": g.budget_seconds }),
        outputs: json!({ "results": results, "errors": errors }),
        provenance: None,
    })
}

fn one_graph(line: &str, b: &SolverBudget, optimal: bool) -> Result<Value> {
    let g = parse_graph6(line)?;
    let p = induced_matching_number(&g, b)?;
    let q = min_maximal_matching_number(&g, b)?;
    let r = matching_number(&g);
    let mut v = json!({
        "graph6": emit_graph6(&g),
        "n": g.n(),
        "m": g.edge_count(),
        "connected": g.is_connected(),
        "p": p,
        "q": q,
        "r": r,
        "alpha": independence_number(&g, b)?,
        "perfect_matching": has_perfect_matching(&g),
    });
    if optimal {
        v["optimal"] = json!({
            "maximum_matching": matching_json(&maximum_matching(&g)),
            "minimum_maximal_matching": matching_json(&minimum_maximal_matching(&g, b)?),
            "maximum_induced_matching": matching_json(&maximum_induced_matching(&g, b)?),
            "maximum_independent_set": maximum_independent_set(&g, b)?.iter().collect::<Vec<_>>(),
        });
    }
    Ok(v)
}

fn construct_cmd(g: &Global, family: &str, params: &[String], out: Option<&Path>) -> Result<Outcome> {
    let b = budget(g)?;
    let built = construct(family, params)?;
    let graph = &built.graph;
    let solver = if graph.edge_count() > 0 { Some(triple(graph, &b)?) } else { None };
    let mut outputs = graph_json(graph);
    outputs["predicted"] = json!(built.predicted);
    outputs["solver"] = json!(solver);
    outputs["formula_edges"] = json!(built.formula_edges);
    outputs["triple_matches"] = json!(built.predicted.map(|t| Some(t) == solver));
    outputs["edges_match"] = json!(built.formula_edges.map(|e| e == graph.edge_count() as u64));
    if let Some(spec) = &built.spec {
        outputs["join"] = join_json(spec, &b)?;
    }
    if let Some(p) = out {
        write_graph6(p, &[emit_graph6(graph)])?;
    }
    Ok(Outcome {
        command: "construct",
        inputs: json!({ "family": built.family, "params": built.params }),
        outputs,
        provenance: None,
    })
}

fn join_json(spec: &eml_core::composition::StarJoinSpec, b: &SolverBudget) -> Result<Value> {
    let prediction = predicted_invariants(spec, b);
    Ok(json!({
        "parts": spec.parts().iter().map(|p| json!({
            "graph6": emit_graph6(&p.graph),
            "attach": p.attach,
            "attach_label": p.graph.label(p.attach),
            "tag": p.tag,
        })).collect::<Vec<_>>(),
        "ind_hypotheses": check_thm_ind_hypotheses(spec, b)?,
        "min_hypotheses": check_thm_min_hypotheses(spec, b)?,
        "prediction": prediction.as_ref().ok(),
        "prediction_error": prediction.as_ref().err().map(|e| e.to_string()),
    }))
}

fn compose(g: &Global, text: &str, out: Option<&Path>) -> Result<Outcome> {
    let b = budget(g)?;
    let spec = star_join_spec(text)?;
    let graph = star_join(&spec)?;
    let solver = triple(&graph, &b)?;
    let mut outputs = graph_json(&graph);
    let join = join_json(&spec, &b)?;
    let consistent = join["prediction"]["triple"]
        .as_object()
        .map(|_| join["prediction"]["triple"] == json!(solver));
    outputs["join"] = join;
    outputs["solver"] = json!(solver);
    outputs["prediction_matches"] = json!(consistent);
    if let Some(p) = out {
        write_graph6(p, &[emit_graph6(&graph)])?;
    }
    Ok(Outcome {
        command: "compose",
        inputs: json!({ "spec": text.trim() }),
        outputs,
        provenance: None,
    })
}

fn verify(
    g: &Global,
    claims: &[String],
    scope: VerifyScope,
    bounds: BoundScope,
) -> Result<(Outcome, Vec<&'static str>)> {
    let mut ids: Vec<&'static str> = Vec::new();
    let wanted: Vec<&str> = if claims.is_empty() {
        Claim::ALL.iter().map(|c| c.id()).collect()
    } else {
        claims.iter().map(String::as_str).collect()
    };
    let mut list = Vec::new();
    let (mut do_bounds, mut do_conditional) = (false, false);
    for c in wanted {
        match c {
            "all" => {
                list.extend(Claim::ALL);
                do_bounds = true;
                do_conditional = true;
            }
            "bounds" => do_bounds = true,
            "conditional" => do_conditional = true,
            other => list.push(Claim::parse(other)?),
        }
    }
    list.sort();
    list.dedup();
    ids.extend(list.iter().map(|c| c.id()));
    if do_bounds {
        ids.push("bounds");
    }
    if do_conditional {
        ids.push("conditional");
    }
    let inputs = search_inputs(
        g,
        json!({
            "claims": ids,
            "r_max": scope.r_max,
            "mine_r_max": scope.mine_r_max,
            "n_max": scope.n_max,
            "p_max": bounds.p_max,
            "bounds_r_max": bounds.r_max,
            "certify_r_max": bounds.certify_r_max,
        }),
    );
    let outcome = Outcome {
        command: "verify",
        inputs,
        outputs: Value::Null,
        provenance: Some(json!({ "claims": ids })),
    };
    Ok((outcome, ids))
}

fn run_verify(g: &Global, o: &mut Outcome, scope: VerifyScope, bounds: BoundScope, ids: &[&str]) -> Result<()> {
    let s = searcher(g, true)?;
    let list: Vec<Claim> = ids.iter().filter_map(|i| Claim::parse(i).ok()).collect();
    let mut failed = 0;
    let mut inconclusive = 0;
    let mut out = serde_json::Map::new();
    if !list.is_empty() {
        let rep = s.verify_theorems(&VerifyScope { claims: list, ..scope })?;
        failed += rep.failed;
        inconclusive += rep.inconclusive;
        out.insert("claims".into(), serde_json::to_value(&rep)?);
    }
    if ids.contains(&"bounds") {
        let rep = s.check_upper_bounds(&bounds)?;
        failed += rep.failed;
        inconclusive += rep
            .rows
            .iter()
            .filter(|r| r.outcome == eml_core::search::Outcome::Inconclusive)
            .count();
        out.insert("bounds".into(), serde_json::to_value(&rep)?);
    }
    if ids.contains(&"conditional") {
        let rows = s.conditional_theorem42_check(bounds.p_max)?;
        for r in &rows {
            match r.outcome {
                eml_core::search::Outcome::Fail => failed += 1,
                eml_core::search::Outcome::Inconclusive => inconclusive += 1,
                _ => {}
            }
        }
        out.insert("conditional".into(), serde_json::to_value(&rows)?);
    }
    out.insert("failed".into(), json!(failed));
    out.insert("inconclusive".into(), json!(inconclusive));
    o.outputs = strip_elapsed(Value::Object(out));
    Ok(())
}

fn stream(n: usize, max_edges: Option<usize>, trees: bool) -> Result<()> {
    let graphs = if trees {
        if max_edges.is_some() {
            bail!("--max-edges does not apply to --trees");
        }
        enumerate_trees(n)?
    } else {
        enumerate_connected_graphs(n, max_edges)?
    };
    let mut w = BufWriter::new(io::stdout().lock());
    for g in graphs {
        if writeln!(w, "{}", emit_graph6(&g)).is_err() {
            // closed pipe
            return Ok(());
        }
    }
    let _ = w.flush();
    Ok(())
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let start = Instant::now();
    let cache = match &g.cache {
        Some(dir) => Some(Cache::new(dir)?),
        None => None,
    };
    let mut g6_out: Option<(std::path::PathBuf, Vec<String>)> = None;

    // cacheable commands describe their inputs first and compute lazily
    type Compute<'a> = Box<dyn FnOnce(&mut Outcome) -> Result<()> + 'a>;
    let (mut outcome, compute): (Outcome, Option<Compute>) = match &cli.command {
        Command::Generate { n, max_edges, trees } => {
            stream(*n, *max_edges, *trees)?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Invariants { file, graph6, optimal } => {
            (invariants(g, file.as_deref(), graph6, *optimal)?, None)
        }
        Command::Construct { family, params, g6 } => (construct_cmd(g, family, params, g6.as_deref())?, None),
        Command::Compose { spec, g6 } => (compose(g, spec, g6.as_deref())?, None),
        Command::Search {
            objective,
            p,
            q,
            r,
            budget,
            no_floors,
            g6,
        } => {
            let t = feasible_triple(*p, *q, *r)?;
            let obj = match objective {
                ObjectiveArg::Minv => "minv",
                ObjectiveArg::Mine => "mine",
            };
            if *objective == ObjectiveArg::Minv && *no_floors {
                bail!("--no-floors applies to mine only");
            }
            let inputs = search_inputs(
                g,
                json!({ "objective": obj, "p": p, "q": q, "r": r, "budget": budget, "floors": !no_floors }),
            );
            let (objective, budget, floors) = (*objective, *budget, !*no_floors);
            if let Some(p) = g6 {
                g6_out = Some((p.clone(), Vec::new()));
            }
            (
                Outcome {
                    command: "search",
                    inputs,
                    outputs: Value::Null,
                    provenance: None,
                },
                Some(Box::new(move |o: &mut Outcome| {
                    let s = searcher(g, floors)?;
                    let rep = match objective {
                        ObjectiveArg::Minv => {
                            let nb = match budget {
                                Some(b) => b as usize,
                                None => 2 * t.r + 1,
                            };
                            s.min_vertices(t, nb)?
                        }
                        ObjectiveArg::Mine => s.min_edges(t, budget)?,
                    };
                    o.outputs = strip_elapsed(serde_json::to_value(&rep)?);
                    Ok(())
                })),
            )
        }
        Command::Census { n, g6 } => {
            if let Some(p) = g6 {
                g6_out = Some((p.clone(), Vec::new()));
            }
            let n = *n;
            (
                Outcome {
                    command: "census",
                    inputs: search_inputs(g, json!({ "n": n })),
                    outputs: Value::Null,
                    provenance: None,
                },
                Some(Box::new(move |o: &mut Outcome| {
                    let census = searcher(g, true)?.census(n)?;
                    o.outputs = serde_json::to_value(&*census)?;
                    Ok(())
                })),
            )
        }
        Command::Verify {
            claims,
            r_max,
            mine_r_max,
            n_max,
            p_max,
            bounds_r_max,
            certify_r_max,
        } => {
            let scope = VerifyScope {
                claims: Vec::new(),
                r_max: *r_max,
                mine_r_max: *mine_r_max,
                n_max: *n_max,
            };
            let bounds = BoundScope {
                p_max: *p_max,
                r_max: *bounds_r_max,
                certify_r_max: *certify_r_max,
            };
            let (o, ids) = verify(g, claims, scope.clone(), bounds.clone())?;
            (
                o,
                Some(Box::new(move |o: &mut Outcome| run_verify(g, o, scope, bounds, &ids))),
            )
        }
        Command::Trees { n_max } => {
            let n_max = *n_max;
            (
                Outcome {
                    command: "trees",
                    inputs: search_inputs(g, json!({ "n_max": n_max })),
                    outputs: Value::Null,
                    provenance: None,
                },
                Some(Box::new(move |o: &mut Outcome| {
                    let rep = searcher(g, true)?.tree_conjecture_check(n_max)?;
                    o.outputs = strip_elapsed(serde_json::to_value(&rep)?);
                    Ok(())
                })),
            )
        }
    };

    let key = Cache::key(outcome.command, &outcome.inputs);
    let hit = match (&cache, &compute) {
        (Some(c), Some(_)) => c.get(&key, outcome.command, &outcome.inputs),
        _ => None,
    };
    let (record, bytes) = match hit {
        Some((bytes, record)) => {
            eprintln!("served from cache ({key})");
            (record, bytes)
        }
        None => {
            if let Some(f) = compute {
                f(&mut outcome)?;
            }
            let mut record = ResultRecord::new(outcome.command, outcome.inputs, outcome.outputs);
            record.provenance = outcome.provenance;
            record.timing.elapsed_seconds = start.elapsed().as_secs_f64();
            record.timing.workers = g.workers;
            let bytes = record.to_json();
            if let (Some(c), true) = (&cache, matches!(record.command.as_str(), "search" | "census" | "verify" | "trees")) {
                c.put(&key, &bytes)?;
            }
            (record, bytes)
        }
    };

    if let Some((path, mut lines)) = g6_out {
        let o = &record.outputs;
        if let Some(ws) = o["witnesses"].as_array() {
            lines.extend(ws.iter().filter_map(|w| w.as_str().map(String::from)));
        }
        if let Some(rows) = o["rows"].as_array() {
            for row in rows {
                if let Some(ws) = row["witnesses"].as_array() {
                    lines.extend(ws.iter().filter_map(|w| w.as_str().map(String::from)));
                }
            }
        }
        write_graph6(&path, &lines)?;
    }

    let text = match g.format {
        Format::Json => bytes,
        f => render(&record, f)?,
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();

    let failed = record.outputs["failed"].as_u64().unwrap_or(0);
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
