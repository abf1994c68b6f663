use std::io::Write;
use std::process::{Command, Output};

use bilat_core::data::{a_seed, tubular_seeds};
use bilat_core::TriangularSeed;
use serde_json::Value;
use tempfile::NamedTempFile;

fn bilat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilat")).args(args).output().expect("binary runs")
}

fn seed_file(seed: &TriangularSeed) -> NamedTempFile {
    let n = seed.rank();
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "{n}").unwrap();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| seed.entry(i, j).to_string()).collect();
        writeln!(f, "{}", row.join(" ")).unwrap();
    }
    f
}

fn text_file(s: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(s.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    assert!(out.status.success() || out.status.code() == Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn analyze_a2_is_distinguished() {
    let f = seed_file(&a_seed(2));
    let v = json(&bilat(&["analyze", path(&f), "--json"]));
    assert_eq!(v["schema"], 1);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    let r = &v["result"];
    assert_eq!(r["verdict"]["kind"], "Distinguished", "{r}");
    assert_eq!(r["variance"], "1/36");
    assert_eq!(r["variance_relation"], "Equal");
}

#[test]
fn analyze_text_output() {
    let f = seed_file(&a_seed(3));
    let out = bilat(&["analyze", path(&f)]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("verdict     distinguished (A_3)"), "{s}");
}

#[test]
fn tubular_e7_has_trace_one() {
    let (_, seed) = tubular_seeds().into_iter().find(|(n, _)| n == "E7^(1,1)").unwrap();
    let f = seed_file(&seed);
    let v = json(&bilat(&["analyze", path(&f), "--json"]));
    let r = &v["result"];
    assert_eq!(r["verdict"]["kind"], "Distinguished", "{r}");
    assert_eq!(r["verdict"]["label"], "Ẽ_7");
    assert_eq!(r["trace"], 1);
}

#[test]
fn indefinite_seed_is_out_of_scope() {
    let f = text_file("2\n1 3\n0 1\n");
    let v = json(&bilat(&["analyze", path(&f), "--json"]));
    assert_eq!(v["result"]["verdict"]["kind"], "OutOfScope");
}

#[test]
fn dot_export() {
    let f = seed_file(&a_seed(3));
    let out = bilat(&["analyze", path(&f), "--dot"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("graph "));
    assert_eq!(s.matches(" -- ").count(), 2);
}

#[test]
fn orbit_of_a2() {
    let f = seed_file(&a_seed(2));
    let v = json(&bilat(&["orbit", path(&f), "--json"]));
    assert_eq!(v["result"]["size"], 2);
    assert_eq!(v["result"]["status"], "Exhausted");
}

#[test]
fn orbit_budget_flags() {
    let f = seed_file(&a_seed(4));
    let v = json(&bilat(&["orbit", path(&f), "--max-states", "3", "--json"]));
    assert_eq!(v["result"]["status"], "BudgetExceeded");
    assert_eq!(v["result"]["size"], 3);
}

#[test]
fn spectrum_of_a3() {
    let f = seed_file(&a_seed(3));
    let v = json(&bilat(&["spectrum", path(&f), "--json"]));
    assert_eq!(v["result"]["variance"], "1/24");
    assert_eq!(v["result"]["relation"], "Equal");
}

#[test]
fn moments_of_a3() {
    let f = seed_file(&a_seed(3));
    let v = json(&bilat(&["moments", path(&f), "--nu", "1/2", "--K", "3", "--json"]));
    let g = v["result"]["bernoulli"]["gamma"].as_array().unwrap();
    assert_eq!(g.len(), 4);
    assert_eq!(g[1], "0/1");
    assert_eq!(g[2], "3/640");
}

#[test]
fn chain_and_hor() {
    let v = json(&bilat(&["chain", "2,3", "--json"]));
    assert_eq!(v["result"]["milnor_number"], 5);
    let v = json(&bilat(&["hor", "1,2,3,4,8,12,16", "--b", "2", "--json"]));
    assert_eq!(v["result"]["n"], 22);
    assert_eq!(v["result"]["gamma4"], "7777/23040");
}

#[test]
fn json_is_byte_identical_across_runs() {
    let f = seed_file(&tubular_seeds()[0].1);
    let a = bilat(&["analyze", path(&f), "--json"]);
    let b = bilat(&["analyze", path(&f), "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = bilat(&["orbit", path(&f), "--max-states", "500", "--json"]);
    let b = bilat(&["orbit", path(&f), "--max-states", "500", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_one() {
    let bad = text_file("2\n1 0\n5 1\n");
    let out = bilat(&["analyze", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotUnitUpperTriangular"));

    let a3 = seed_file(&a_seed(3));
    assert_eq!(bilat(&["moments", path(&a3), "--nu", "half"]).status.code(), Some(1));
    assert_eq!(bilat(&["moments", path(&a3), "--nu", "-1"]).status.code(), Some(1));
    assert_eq!(bilat(&["analyze", "/nonexistent/seed.txt"]).status.code(), Some(1));
    assert_eq!(bilat(&["chain", "1,x"]).status.code(), Some(1));
    assert_eq!(bilat(&["hor", "1,2", "--b", "3"]).status.code(), Some(1));
    assert_eq!(bilat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bilat(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports_the_two_printed_mismatches() {
    let out = bilat(&["verify", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let failed: Vec<String> = v["result"]["sections"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap().iter())
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(failed, ["E_8(a_3)", "E_8(a_8)"]);
}
