use eml_core::composition::{bound_witness, edge_upper_bound, star_join, thm34_1, thm34_2, thm34_3};
use eml_core::constructions::{complete, complete_bipartite, cycle, g1, g2, g3, g4, g5, g_r};
use eml_core::invariants::{maximum_induced_matching, maximum_matching, minimum_maximal_matching};
use eml_core::{emit_graph6, parse_graph6, triple, Graph, InvariantTriple, Matching, SolverBudget};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Node limit per solver call, so a pasted graph cannot hang the page.
const NODE_LIMIT: u64 = 5_000_000;

fn budget() -> SolverBudget {
    SolverBudget::nodes(NODE_LIMIT)
}

fn edges(m: &Matching) -> Vec<[usize; 2]> {
    m.edges().iter().map(|&(u, v)| [u, v]).collect()
}

fn describe(g: &Graph) -> Result<Value, String> {
    let b = budget();
    let t = triple(g, &b).map_err(|e| e.to_string())?;
    let labels: Vec<String> = (0..g.n()).map(|v| g.label(v)).collect();
    Ok(json!({
        "graph6": emit_graph6(g),
        "n": g.n(),
        "m": g.edge_count(),
        "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        "labels": labels,
        "p": t.p,
        "q": t.q,
        "r": t.r,
        "connected": g.is_connected(),
        "maximum_matching": edges(&maximum_matching(g)),
        "maximum_induced_matching": edges(&maximum_induced_matching(g, &b).map_err(|e| e.to_string())?),
        "minimum_maximal_matching": edges(&minimum_maximal_matching(g, &b).map_err(|e| e.to_string())?),
    }))
}

pub fn analyze_json(graph6: &str) -> Result<String, String> {
    let g = parse_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    Ok(describe(&g)?.to_string())
}

fn family_graph(family: &str, a: usize, b: usize, c: usize) -> Result<Graph, String> {
    let g = match family {
        "Kn" => complete(a),
        "Kmn" => complete_bipartite(a, b),
        "Cn" => cycle(a),
        "gr" => g_r(a),
        "g1" => g1(a),
        "g2" => g2(a, b),
        "g3" => g3(a),
        "g4" => g4(a),
        "g5" => g5(a, b),
        "thm34-1" => thm34_1(a, b).and_then(|s| star_join(&s)),
        "thm34-2" => thm34_2(a, b, c).and_then(|s| star_join(&s)),
        "thm34-3" => thm34_3(a, b, c).and_then(|s| star_join(&s)),
        other => return Err(format!("unknown family {other:?}")),
    };
    g.map_err(|e| e.to_string())
}

pub fn construct_json(family: &str, a: usize, b: usize, c: usize) -> Result<String, String> {
    let g = family_graph(family, a, b, c)?;
    let mut v = describe(&g)?;
    v["family"] = json!(family);
    Ok(v.to_string())
}

pub fn bound_json(p: usize, q: usize, r: usize) -> Result<String, String> {
    let t = InvariantTriple::new(p, q, r);
    let bound = edge_upper_bound(t).map_err(|e| e.to_string())?;
    let witness = bound_witness(t).map_err(|e| e.to_string())?;
    let graph = match witness {
        Some(g) => describe(&g)?,
        None => Value::Null,
    };
    Ok(json!({
        "p": p,
        "q": q,
        "r": r,
        "bound": bound.value,
        "exact": bound.exact,
        "source": bound.source,
        "witness": graph,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn analyze(graph6: &str) -> Result<String, JsError> {
    analyze_json(graph6).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn construct(family: &str, a: usize, b: usize, c: usize) -> Result<String, JsError> {
    construct_json(family, a, b, c).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound(p: usize, q: usize, r: usize) -> Result<String, JsError> {
    bound_json(p, q, r).map_err(|e| JsError::new(&e))
}
