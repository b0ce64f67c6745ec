use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn weakening() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/weakening.json")
}

fn cdfsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdfsat"))
        .args(args)
        .env_remove("CDFSAT_CAP")
        .env_remove("CDFSAT_THETA")
        .env_remove("CDFSAT_SEED")
        .env_remove("CDFSAT_HEURISTIC")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_chain() {
    let out = cdfsat(&["analyze", "-i", path(&data("chain.cnf"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cdf"]["verdict"], "ComCDF");
    assert_eq!(r["logic"]["backtrackCount"], 0);
    assert_eq!(r["logic"]["backtrackingRequired"], false);
    assert_eq!(r["semantic"]["modelCount"], 4);
    assert_eq!(r["provenance"]["config"]["enumerationCap"], 26);
    let table = String::from_utf8(out.stderr).unwrap();
    assert!(table.contains("Backtracking required | no"), "{table}");
}

#[test]
fn analyze_three_clause() {
    let out = cdfsat(&["analyze", "-i", path(&data("three_clause.cnf"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cdf"]["verdict"], "ExpCDF");
    let witness = &r["cdf"]["compositionality"]["witness"];
    assert_eq!(witness["kind"], "wide_clause");
    assert_eq!(witness["assignment"], serde_json::json!({"1": true}));
    assert_eq!(witness["composed"], "undefined");
    assert_eq!(r["logic"]["backtrackingRequired"], true);
}

#[test]
fn analyze_beyond_the_cap_is_partial() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("dense.cnf");
    let mut text = String::from("p cnf 30 90\n");
    for i in 0..90 {
        let a = i % 30 + 1;
        let b = (i * 7 + 3) % 30 + 1;
        let c = (i * 13 + 5) % 30 + 1;
        if a == b || b == c || a == c {
            text.push_str(&format!("{a} 0\n"));
        } else {
            text.push_str(&format!("{a} -{b} {c} 0\n"));
        }
    }
    std::fs::write(&file, text).unwrap();
    let out = cdfsat(&["analyze", "-i", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["semantic"]["status"], "intractable");
    assert!(r["cdf"]["verdict"].is_string());
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.cnf");
    std::fs::write(&file, "p cnf 2 2\n1 2 0\n1 -7 0\n").unwrap();
    let out = cdfsat(&["analyze", "-i", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

fn growth_fit(args: &[&str]) -> Value {
    let mut all = vec!["growth", "--format", "json"];
    all.extend_from_slice(args);
    let out = cdfsat(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

#[test]
fn growth_bases() {
    let r = growth_fit(&["-k", "3", "--density", "1/3", "--disjoint", "--n", "9..24:3", "--seed", "1"]);
    let base = r["fit"]["impliedBase"].as_f64().unwrap();
    assert!((base - 1.913).abs() < 0.001, "{base}");
    assert_eq!(r["fit"]["preferredModel"], "exponential");
    let r = growth_fit(&["-k", "2", "--density", "1/2", "--disjoint", "--n", "8..24:4"]);
    let base = r["fit"]["impliedBase"].as_f64().unwrap();
    assert!((base - 3f64.sqrt()).abs() < 0.001, "{base}");
}

#[test]
fn growth_csv_columns() {
    let out = cdfsat(&["growth", "-k", "2", "--density", "1/2", "--disjoint", "--n", "4,6,8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,imageSize,logImageBits");
    assert_eq!(lines[1], format!("4,9,{}", 9f64.log2()));
}

#[test]
fn growth_usage_errors() {
    assert_eq!(cdfsat(&["growth", "-k", "3", "--density", "1/3", "--disjoint"]).status.code(), Some(1));
    assert_eq!(cdfsat(&["growth", "-k", "3", "--density", "1/2", "--disjoint", "--n", "6,8,10"]).status.code(), Some(1));
    assert_eq!(cdfsat(&["growth", "-k", "3", "--n", "9,6,12"]).status.code(), Some(1));
    assert_eq!(cdfsat(&["growth", "-k", "3", "--density", "1/0", "--n", "9"]).status.code(), Some(1));
}

#[test]
fn encodings_and_euler() {
    let out = cdfsat(&["encode", "hamiltonian", "-i", path(&data("k3.txt"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p cnf 9 "));
    assert!(text.contains("c x9 = vertex 2 at position 2"));

    let out = cdfsat(&["encode", "matching", "-i", path(&data("edge.txt"))]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p cnf 1 "));
    let parsed = cdfsat::dimacs::parse_dimacs(&text).unwrap();
    assert_eq!(cdfsat::semantic::enumerate_count(&parsed.formula), 1);

    let r = json(&cdfsat(&["euler", "-i", path(&data("p3.txt"))]));
    assert_eq!(r["exists"], true);
    assert_eq!(r["oddCount"], 2);
    assert_eq!(r["connected"], true);
    let r = json(&cdfsat(&["euler", "-i", path(&data("k4.txt"))]));
    assert_eq!((r["exists"].as_bool(), r["oddCount"].as_u64()), (Some(false), Some(4)));
}

#[test]
fn malformed_graph_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    std::fs::write(&file, "v 3\n0 3\n").unwrap();
    let out = cdfsat(&["euler", "-i", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = cdfsat(&["encode", "hamiltonian", "-i", path(&data("edge.txt"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn prove_reports() {
    let r = json(&cdfsat(&["prove", "A -> (B -> A)", "--derivation", path(&weakening())]));
    assert_eq!(r["tautology"], true);
    assert_eq!(r["proof"]["verdict"], "valid");
    assert_eq!(r["cost"]["semantic"], 4);
    assert_eq!(r["cost"]["syntactic"], 5);

    let r = json(&cdfsat(&["prove", "A & ~A"]));
    assert_eq!(r["tautology"], false);

    let r = json(&cdfsat(&["prove", "A -> (B -> A)"]));
    assert_eq!(r["tautology"], true);
    assert!(r.get("proof").is_none());
    assert!(r["cost"]["syntactic"].is_null());

    assert_eq!(cdfsat(&["prove", "A ->"]).status.code(), Some(1));
}

#[test]
fn dot_exports() {
    let out = cdfsat(&["export-dot", "-i", path(&data("chain.cnf")), "--kind", "trace"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(!dot.contains("UNSAT"));
    assert_eq!(dot.matches(" -> ").count(), 4, "{dot}");

    let out = cdfsat(&["export-dot", "-i", path(&data("three_clause.cnf")), "--kind", "trace"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("(UNSAT)").count(), 1);

    let out = cdfsat(&["export-dot", "-i", path(&data("three_clause.cnf")), "--kind", "implication-graph"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("~x1 | ~x2 | x3"));

    let out = cdfsat(&["export-dot", "-i", path(&data("chain.cnf")), "--kind", "implication-graph"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"x1\" -> \"x2\""));
}

#[test]
fn flags_override_environment() {
    let chain = data("chain.cnf");
    let run = |env_cap: &str, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cdfsat"));
        cmd.env("CDFSAT_CAP", env_cap).args(["analyze", "-i", path(&chain)]);
        if let Some(cap) = flag {
            cmd.args(["--cap", cap]);
        }
        cmd.output().unwrap()
    };
    assert_eq!(run("2", None).status.code(), Some(2));
    assert_eq!(run("2", Some("26")).status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_cdfsat"))
        .env("CDFSAT_THETA", "0.25")
        .args(["analyze", "-i", path(&chain)])
        .output()
        .unwrap();
    assert_eq!(json(&out)["cdf"]["theta"], 0.25);
}

#[test]
fn output_flag_and_format_checks() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = cdfsat(&["analyze", "-i", path(&data("chain.cnf")), "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["cdf"]["verdict"], "ComCDF");

    assert_eq!(cdfsat(&["analyze", "-i", path(&data("chain.cnf")), "--format", "csv"]).status.code(), Some(1));
    assert_eq!(cdfsat(&["analyze", "-i", path(&data("chain.cnf")), "--theta", "1.5"]).status.code(), Some(1));
    assert_eq!(cdfsat(&["analyze"]).status.code(), Some(1));
    assert_eq!(cdfsat(&["--help"]).status.code(), Some(0));
}
