use std::fmt::Write as _;

use anyhow::Result;
use serde_json::Value;

use crate::record::ResultRecord;
use crate::Format;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::Object(o) if o.contains_key("p") && o.contains_key("q") && o.contains_key("r") => {
            format!("({},{},{})", o["p"], o["q"], o["r"])
        }
        v => v.to_string(),
    }
}

fn triple_of(v: &Value) -> String {
    format!("({},{},{})", v["p"], v["q"], v["r"])
}

fn rows(v: &Value) -> &[Value] {
    v.as_array().map(Vec::as_slice).unwrap_or(&[])
}

/// Header plus one row per item, each column read from the item by key.
fn table(items: &[Value], columns: &[&str]) -> Vec<Vec<String>> {
    let mut out = vec![columns.iter().map(|c| c.to_string()).collect()];
    for it in items {
        out.push(columns.iter().map(|c| cell(&it[*c])).collect());
    }
    out
}

fn csv_text(rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn pairs(o: &Value, keys: &[&str]) -> Vec<Vec<String>> {
    keys.iter()
        .filter(|k| !o[**k].is_null())
        .map(|k| vec![k.to_string(), cell(&o[*k])])
        .collect()
}

fn kv_text(rows: &[Vec<String>]) -> String {
    let w = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
    rows.iter().map(|r| format!("{:<w$}  {}\n", r[0], r[1])).collect()
}

pub fn render(rec: &ResultRecord, format: Format) -> Result<String> {
    let o = &rec.outputs;
    let csv = format == Format::Csv;
    let grid = |rows: Vec<Vec<String>>| -> Result<String> {
        if csv {
            csv_text(&rows)
        } else {
            Ok(aligned(&rows))
        }
    };
    let kv = |rows: Vec<Vec<String>>| -> Result<String> {
        if csv {
            let (head, vals): (Vec<_>, Vec<_>) = rows.into_iter().map(|r| (r[0].clone(), r[1].clone())).unzip();
            csv_text(&[head, vals])
        } else {
            Ok(kv_text(&rows))
        }
    };
    match rec.command.as_str() {
        "invariants" => {
            let cols = ["line", "graph6", "n", "m", "p", "q", "r", "alpha", "perfect_matching"];
            let mut s = grid(table(rows(&o["results"]), &cols))?;
            if csv {
                // errors go to a trailing block with their own header
                if !rows(&o["errors"]).is_empty() {
                    s.push_str(&csv_text(&table(rows(&o["errors"]), &["line", "error"]))?);
                }
            } else {
                for e in rows(&o["errors"]) {
                    writeln!(s, "line {}: {}", e["line"], cell(&e["error"]))?;
                }
                for r in rows(&o["results"]) {
                    if let Some(opt) = r["optimal"].as_object() {
                        writeln!(s, "line {} optimal:", r["line"])?;
                        for (k, v) in opt {
                            writeln!(s, "  {k}: {v}")?;
                        }
                    }
                }
            }
            Ok(s)
        }
        "construct" | "compose" => {
            let mut rows = vec![vec!["command".to_string(), rec.command.clone()]];
            if rec.command == "construct" {
                rows.push(vec!["family".into(), cell(&rec.inputs["family"])]);
            }
            rows.extend(pairs(
                o,
                &["graph6", "n", "m", "predicted", "solver", "formula_edges", "triple_matches", "edges_match"],
            ));
            if !o["join"].is_null() {
                let j = &o["join"];
                rows.push(vec!["prediction".into(), cell(&j["prediction"]["triple"])]);
                rows.push(vec!["prediction_error".into(), cell(&j["prediction_error"])]);
                rows.push(vec!["ind_hypotheses_pass".into(), cell(&j["ind_hypotheses"]["pass"])]);
                rows.push(vec!["min_hypotheses_pass".into(), cell(&j["min_hypotheses"]["pass"])]);
                rows.extend(pairs(o, &["prediction_matches"]));
            }
            if !csv {
                let labels = rows_of_labels(&o["labels"]);
                if !labels.is_empty() {
                    rows.push(vec!["labels".into(), labels]);
                }
            }
            kv(rows)
        }
        "search" => kv(pairs(
            o,
            &["target", "objective", "status", "value", "lower_bound", "upper_bound", "budget", "scanned", "witnesses", "note"],
        )),
        "census" => grid(
            std::iter::once(vec!["n", "p", "q", "r", "count", "min_edges"].into_iter().map(String::from).collect())
                .chain(rows(&o["rows"]).iter().map(|r| {
                    ["n", "p", "q", "r", "count", "min_edges"].iter().map(|k| cell(&r[*k])).collect()
                }))
                .collect(),
        ),
        "verify" => {
            let mut table_rows = vec![["section", "outcome", "claim", "instance", "expected", "observed", "counterexample"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()];
            for c in rows(&o["claims"]["checks"]) {
                table_rows.push(vec![
                    "claims".into(),
                    cell(&c["outcome"]),
                    cell(&c["claim"]),
                    cell(&c["instance"]),
                    cell(&c["expected"]),
                    cell(&c["observed"]),
                    cell(&c["counterexample"]),
                ]);
            }
            for b in rows(&o["bounds"]["rows"]) {
                table_rows.push(vec![
                    "bounds".into(),
                    cell(&b["outcome"]),
                    cell(&b["construction"]),
                    triple_of(&b["triple"]),
                    format!("<= {}", b["bound"]),
                    format!(
                        "witness {} edges {}; certified {}",
                        cell(&b["witness_triple"]),
                        cell(&b["witness_edges"]),
                        cell(&b["certified_min"])
                    ),
                    String::new(),
                ]);
            }
            for c in rows(&o["conditional"]) {
                let rep = &c["report"];
                table_rows.push(vec![
                    "conditional".into(),
                    cell(&c["outcome"]),
                    "least size".into(),
                    cell(&rep["target"]),
                    cell(&c["predicted"]),
                    format!("{} {}", cell(&rep["status"]), cell(&rep["value"])),
                    rep["witnesses"].get(0).map(cell).unwrap_or_default(),
                ]);
            }
            let mut s = grid(table_rows)?;
            if !csv {
                writeln!(s, "failed: {}, inconclusive: {}", o["failed"], o["inconclusive"])?;
            }
            Ok(s)
        }
        "trees" => {
            let mut s = grid(table(rows(&o["orders"]), &["n", "trees", "equal"]))?;
            if !csv {
                match o["counterexample"].as_object() {
                    None => writeln!(s, "no counterexample among {} trees", o["trees"])?,
                    Some(c) => writeln!(
                        s,
                        "counterexample {} (induced matching {}, minimum maximal matching {})",
                        cell(&c["graph6"]),
                        c["ind_match"],
                        c["min_match"]
                    )?,
                }
            }
            Ok(s)
        }
        other => Ok(format!("{other}: {}\n", serde_json::to_string(o)?)),
    }
}

fn rows_of_labels(labels: &Value) -> String {
    rows(labels)
        .iter()
        .enumerate()
        .map(|(i, l)| format!("{i}={}", cell(l)))
        .collect::<Vec<_>>()
        .join(" ")
}
