use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cayham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayham")).args(args).env_remove("CAYHAM_WORKERS").output().expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn decide_g5_has_no_path() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("g5.json");
    assert_eq!(code(&cayham(&["family", "g5", "--out", s(&f)])), 0);
    let o = cayham(&["decide", s(&f), "--path"]);
    assert_eq!(code(&o), 1);
    let r = json(&stdout(&o));
    assert_eq!(r["verdict"], "not_exists");
    assert_eq!(r["method"], "structured");
    assert_eq!(r["stats"]["patterns"], 192);
    assert!(r.get("certificate").is_none());
}

#[test]
fn decide_cyclic_path_exists() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "z5.json", r#"{"type":"cyclic","n":5}"#);
    let o = cayham(&["decide", s(&f), "--gens", "[1]", "--path"]);
    assert_eq!(code(&o), 0);
    let r = json(&stdout(&o));
    assert_eq!(r["verdict"], "exists");
    assert_eq!(r["certificate"]["labels"], json("[0,0,0,0]"));
    assert_eq!(r["certificate"]["kind"], "path");
}

#[test]
fn decide_z12_three_generators_has_no_cycle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "z12.json", r#"{"type":"cyclic","n":12}"#);
    let out = dir.path().join("report.json");
    let o = cayham(&["decide", s(&f), "--gens", "6;8;9", "--cycle", "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    let r = json(&fs::read_to_string(out).unwrap());
    assert_eq!(r["verdict"], "not_exists");
    assert_eq!(r["kind"], "cycle");
    assert_eq!(r["method"], "dfs");
}

#[test]
fn decide_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"type":"cyclic""#);
    let o = cayham(&["decide", s(&bad), "--gens", "1", "--path"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed"));

    let f = write(&dir, "z12.json", r#"{"type":"cyclic","n":12}"#);
    assert_eq!(code(&cayham(&["decide", s(&f), "--gens", "1;5", "--cycle", "--method", "structured"])), 2);

    let f = write(&dir, "a4z2.json", "");
    let o = cayham(&["family", "a4z2", "--out", s(&f)]);
    assert_eq!(code(&o), 0);
    let o = cayham(&["decide", s(&f), "--path", "--method", "dfs", "--node-cap", "3"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&stdout(&o))["verdict"], "unknown");
}

fn construct(dir: &TempDir, spec: &str, gens: &str, method: &str) -> (Output, PathBuf) {
    let f = write(dir, "spec.json", spec);
    let out = dir.path().join(format!("{method}.cert.json"));
    let o = cayham(&["construct", s(&f), "--gens", gens, "--method", method, "--out", s(&out)]);
    (o, out)
}

#[test]
fn construct_abelian_then_verify() {
    let dir = TempDir::new().unwrap();
    let (o, out) = construct(&dir, r#"{"type":"cyclic","n":12}"#, "2;3", "abelian");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = json(&fs::read_to_string(&out).unwrap());
    assert_eq!(c["labels"].as_array().unwrap().len(), 11);
    assert_eq!(c["format"], 1);
    let v = cayham(&["verify", s(&out)]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("ok: hamiltonian path on 12 vertices"));
}

#[test]
fn construct_abelian3_cycle() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"type":"direct_product","factors":[{"type":"cyclic","n":4},{"type":"cyclic","n":2}]}"#;
    let (o, out) = construct(&dir, spec, "1,0;1,1;2,0", "abelian3");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = json(&fs::read_to_string(&out).unwrap());
    assert_eq!(c["kind"], "cycle");
    assert_eq!(c["labels"].as_array().unwrap().len(), 8);
    assert_eq!(c["generators"], json("[[1,0],[1,1],[3,1]]"));
    assert_eq!(code(&cayham(&["verify", s(&out)])), 0);

    let (o, _) = construct(&dir, spec, "1,0;1,1", "abelian3");
    assert_eq!(code(&o), 2);
}

#[test]
fn construct_small_commutator_on_s3() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"type":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]}"#;
    let (o, out) = construct(&dir, spec, "[[1,0,2],[1,2,0]]", "small-commutator");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = json(&fs::read_to_string(&out).unwrap());
    assert_eq!(c["labels"].as_array().unwrap().len(), 5);
    assert_eq!(code(&cayham(&["verify", s(&out)])), 0);
}

#[test]
fn construct_rankin_and_fgl() {
    let dir = TempDir::new().unwrap();
    let (o, out) = construct(&dir, r#"{"type":"cyclic","n":4}"#, "1;3", "rankin");
    assert_eq!(code(&o), 0);
    assert_eq!(json(&fs::read_to_string(&out).unwrap())["labels"], json("[0,0,0,0]"));

    let (o, _) = construct(&dir, r#"{"type":"cyclic","n":12}"#, "2;3", "rankin");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no hamiltonian cycle"));

    let spec = r#"{"type":"direct_product","factors":[{"type":"cyclic","n":4},{"type":"cyclic","n":3}]}"#;
    let (o, out) = construct(&dir, spec, "1,0;1,1", "fgl");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&cayham(&["verify", s(&out)])), 0);
}

#[test]
fn construct_reports_violated_hypothesis() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"type":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]}"#;
    let (o, _) = construct(&dir, spec, "[[1,0,2],[1,2,0]]", "abelian");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not abelian"));
}

#[test]
fn verify_rejects_tampered_certificate() {
    let dir = TempDir::new().unwrap();
    let (o, out) = construct(&dir, r#"{"type":"cyclic","n":12}"#, "2;3", "abelian");
    assert_eq!(code(&o), 0);
    let mut c = json(&fs::read_to_string(&out).unwrap());
    let labels = c["labels"].as_array_mut().unwrap();
    let flipped = 1 - labels[4].as_u64().unwrap();
    labels[4] = flipped.into();
    let bad = write(&dir, "tampered.json", &c.to_string());
    let v = cayham(&["verify", s(&bad)]);
    assert_eq!(code(&v), 1);
    let text = stdout(&v);
    assert!(text.starts_with("rejected: step "), "{text}");
}

#[test]
fn family_theorem13_p7() {
    let o = cayham(&["family", "theorem13", "--p", "7", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let doc = json(&stdout(&o));
    let g = &doc["group"];
    assert_eq!(g["type"], "semidirect_metacyclic");
    let order = g["alpha"].as_u64().unwrap() * g["beta"].as_u64().unwrap() * g["p"].as_u64().unwrap();
    assert_eq!(order, 42);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 2);

    assert_eq!(code(&cayham(&["family", "theorem13", "--p", "5", "--n", "1"])), 2);
    assert_eq!(code(&cayham(&["family", "theorem13", "--p", "5", "--n", "1", "--unsafe-any-prime"])), 0);
}

#[test]
fn family_circulants_and_milnor() {
    let o = cayham(&["family", "circulant-12k", "--k", "1"]);
    assert_eq!(json(&stdout(&o))["generators"], json("[[6],[8],[9]]"));
    let o = cayham(&["family", "circulant-2k"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&stdout(&o))["group"]["n"], 12);
    let o = cayham(&["family", "circulant-2k", "--a", "2", "--b", "2", "--k", "6"]);
    assert_eq!(code(&o), 2);
    let o = cayham(&["family", "milnor", "--max-order", "60"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| json(l)["generators"].as_array().unwrap().len() == 2));
}

#[test]
fn export_dot() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "z3.json", r#"{"type":"cyclic","n":3}"#);
    let out = dir.path().join("z3.dot");
    let o = cayham(&["export", s(&f), "--gens", "1;2", "--dot", s(&out), "--names", "a,b+k"]);
    assert_eq!(code(&o), 0);
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph cayley {"));
    assert!(dot.contains("v0 -> v1 [label=\"a\"];"));
    assert!(dot.contains("v0 -> v2 [label=\"b+k\"];"));
    assert_eq!(code(&cayham(&["export", s(&f), "--gens", "1;2", "--dot", s(&out), "--names", "a"])), 2);
}

#[test]
fn survey_up_to_24_agrees_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("first.jsonl");
    let second = dir.path().join("second.jsonl");
    let o = cayham(&["survey", "--max-order", "24", "--out", s(&first)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_cayham"))
        .args(["survey", "--max-order", "24", "--out", s(&second)])
        .env("CAYHAM_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&first).unwrap();
    assert_eq!(text, fs::read_to_string(&second).unwrap());
    let records: Vec<Value> = text.lines().map(json).collect();
    assert!(records.len() > 1000, "{}", records.len());
    for r in &records {
        assert_eq!(r["agree"], true, "{r}");
        if !r["path_structured"].is_null() {
            assert_eq!(r["path_structured"], r["path_dfs"], "{r}");
        }
    }
}
