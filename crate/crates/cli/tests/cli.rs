use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn eml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eml"))
        .args(args)
        .env_remove("EML_FORMAT")
        .env_remove("EML_WORKERS")
        .env_remove("EML_CACHE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = eml(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn triple(v: &Value) -> (u64, u64, u64) {
    (v["p"].as_u64().unwrap(), v["q"].as_u64().unwrap(), v["r"].as_u64().unwrap())
}

#[test]
fn invariants_of_k4() {
    let rec = json(&["invariants", "-g", "C~"]);
    let r = &rec["outputs"]["results"][0];
    assert_eq!(triple(r), (1, 2, 2));
    assert_eq!(r["alpha"], 1);
    assert_eq!(r["perfect_matching"], true);
    assert_eq!(rec["schema_version"], 1);
}

#[test]
fn invariants_file_with_a_bad_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    fs::write(&path, "C~\nnot graph6 !\nDhc\n").unwrap();
    let rec = json(&["invariants", path.to_str().unwrap()]);
    assert_eq!(rec["outputs"]["results"].as_array().unwrap().len(), 2);
    let errors = rec["outputs"]["errors"].as_array().unwrap();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0]["line"], 2);

    let empty = dir.path().join("empty.g6");
    fs::write(&empty, "").unwrap();
    let rec = json(&["invariants", empty.to_str().unwrap()]);
    assert!(rec["outputs"]["results"].as_array().unwrap().is_empty());
}

#[test]
fn invariants_with_optimal_witnesses() {
    let rec = json(&["invariants", "-g", "Dhc", "--optimal"]);
    let opt = &rec["outputs"]["results"][0]["optimal"];
    assert_eq!(opt["maximum_matching"].as_array().unwrap().len(), 2);
    assert_eq!(opt["maximum_induced_matching"].as_array().unwrap().len(), 1);
}

#[test]
fn constructions() {
    let rec = json(&["construct", "g1", "q=3"]);
    let o = &rec["outputs"];
    assert_eq!(o["n"], 8);
    assert_eq!(o["m"], 7);
    assert_eq!(triple(&o["solver"]), (3, 3, 4));
    assert_eq!(o["triple_matches"], true);

    let rec = json(&["construct", "thm34-1", "p=2", "q=3"]);
    assert_eq!(rec["outputs"]["m"], 7);
    assert_eq!(rec["outputs"]["edges_match"], true);

    let out = eml(&["construct", "g5", "q=3", "r=5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q+2 <= r <= 2q-2"));
}

#[test]
fn construct_writes_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k5.g6");
    let out = eml(&["construct", "Kn", "5", "--g6", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(path).unwrap(), "D~{\n");
}

#[test]
fn compose_reports_hypotheses() {
    let rec = json(&["compose", "Kmn(2,2)@0 + gr(3)@x1 + Kn(2)@0"]);
    let o = &rec["outputs"];
    assert_eq!(triple(&o["solver"]), (3, 5, 6));
    assert_eq!(o["prediction_matches"], true);

    let rec = json(&["compose", "gr(3)@y1 + Kn(2)@0"]);
    assert_eq!(rec["outputs"]["join"]["ind_hypotheses"]["pass"], false);
    assert!(rec["outputs"]["join"]["prediction"].is_null());
}

#[test]
fn searches() {
    let rec = json(&["search", "minv", "2", "2", "3"]);
    assert_eq!(rec["outputs"]["value"], 6);
    assert_eq!(rec["outputs"]["status"], "certified");
    let rec = json(&["search", "mine", "3", "3", "3"]);
    assert_eq!(rec["outputs"]["value"], 6);

    let out = eml(&["search", "minv", "1", "3", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("r <= 2q"));
}

#[test]
fn witnesses_reverify() {
    let rec = json(&["search", "mine", "2", "2", "3", "--witnesses", "5"]);
    let ws = rec["outputs"]["witnesses"].as_array().unwrap();
    assert!(!ws.is_empty());
    for w in ws {
        let inv = json(&["invariants", "-g", w.as_str().unwrap()]);
        let r = &inv["outputs"]["results"][0];
        assert_eq!(triple(r), (2, 2, 3));
        assert_eq!(r["m"], 5);
        assert_eq!(r["connected"], true);
    }
}

#[test]
fn verify_exit_codes() {
    let out = eml(&["verify", "notpm", "--nmax", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("failed: 0"));

    let rec = json(&["verify", "notpm", "--nmax", "6"]);
    assert_eq!(rec["provenance"]["claims"][0], "notpm");
    assert_eq!(rec["outputs"]["failed"], 0);

    let out = eml(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_csv_layout() {
    let out = eml(&["census", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p,q,r,count,min_edges"));
    assert!(text.contains("4,1,1,2,"));
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn deterministic_across_workers() {
    let a = json(&["census", "7", "--workers", "1"]);
    let b = json(&["census", "7", "--workers", "3"]);
    assert_eq!(without_timing(a), without_timing(b));
    let a = json(&["trees", "12", "--workers", "1"]);
    let b = json(&["trees", "12", "--workers", "2", "--split-depth", "3"]);
    assert_eq!(a["outputs"], b["outputs"]);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = eml(&["census", "7", "--cache", cache, "--format", "json"]);
    let second = eml(&["census", "7", "--cache", cache, "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("served from cache"));

    // corrupt every entry: it must be discarded and recomputed
    for e in fs::read_dir(dir.path()).unwrap() {
        fs::write(e.unwrap().path(), "{ not json").unwrap();
    }
    let third = eml(&["census", "7", "--cache", cache, "--format", "json"]);
    assert!(third.status.success());
    let err = String::from_utf8_lossy(&third.stderr);
    assert!(err.contains("discarding corrupt cache entry"));
    assert!(!err.contains("served from cache"));
    let a: Value = serde_json::from_slice(&first.stdout).unwrap();
    let b: Value = serde_json::from_slice(&third.stdout).unwrap();
    assert_eq!(without_timing(a), without_timing(b));

    // a record from another code version is ignored
    for e in fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        let text = fs::read_to_string(&p).unwrap().replace(env!("CARGO_PKG_VERSION"), "0.0.0-old");
        fs::write(p, text).unwrap();
    }
    let fourth = eml(&["census", "7", "--cache", cache, "--format", "json"]);
    assert!(!String::from_utf8_lossy(&fourth.stderr).contains("served from cache"));
}

#[test]
fn environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_eml"))
        .args(["construct", "Cn", "5"])
        .env("EML_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outputs"]["m"], 5);

    let out = Command::new(env!("CARGO_BIN_EXE_eml"))
        .args(["invariants", "-g", "C~"])
        .env("EML_BUDGET_NODES", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_streams_graph6() {
    let out = eml(&["generate", "6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 112);
    let out = eml(&["generate", "9", "--trees"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 47);
}
