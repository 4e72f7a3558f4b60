use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scrollstci"))
        .args(args)
        .env_remove("SCROLLSTCI_TIMEOUT")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

fn write(dir: &Path, name: &str, v: Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn ideals(dir: &Path) -> (String, String, String) {
    let ring = json!({"vars": ["x", "y", "z"], "field": "QQ"});
    (
        write(dir, "i.json", json!({"ring": ring, "gens": ["x^2 - y", "x*z"]})),
        write(dir, "xsq.json", json!({"gens": ["x^2"]})),
        write(dir, "y.json", json!({"gens": ["y"]})),
    )
}

#[test]
fn gb() {
    let dir = TempDir::new().unwrap();
    let (i, _, _) = ideals(dir.path());
    let v = ok(&["gb", &i, "--order", "lex"]);
    assert_eq!(v["order"], "lex");
    assert!(v["gens"].as_array().unwrap().contains(&json!("y*z")));
}

#[test]
fn member_and_radmember() {
    let dir = TempDir::new().unwrap();
    let (i, xsq, _) = ideals(dir.path());
    assert_eq!(ok(&["member", &i, "y*z"])["member"], true);
    let out = run(&["member", &i, "z"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["member"], false);
    let v = ok(&["radmember", &xsq, "x"]);
    assert_eq!(v["member"], true);
    assert_eq!(v["witness_exponent"], 2);
}

#[test]
fn radeq() {
    let dir = TempDir::new().unwrap();
    let (_, xsq, y) = ideals(dir.path());
    let out = run(&["radeq", &xsq, &y]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["equal"], false);
    assert_eq!(ok(&["radeq", &xsq, &xsq])["equal"], true);
}

#[test]
fn intersect() {
    let dir = TempDir::new().unwrap();
    let (_, xsq, y) = ideals(dir.path());
    let v = ok(&["intersect", &xsq, &y]);
    assert_eq!(v["gens"], json!(["x^2*y"]));
}

#[test]
fn minors_and_verdi() {
    let v = ok(&["minors", &fixture("scroll-twisted-cubic.json")]);
    assert_eq!(v["minors"].as_array().unwrap().len(), 3);
    let v = ok(&["verdi", "--block", "x0,x1,x2,x3"]);
    assert_eq!(v, json!({"F": ["x0*x2 - x1^2", "x0*x3^2 - 2*x1*x2*x3 + x2^3"]}));
    assert_eq!(ok(&["verdi", &fixture("scroll-twisted-cubic.json")])["F"].as_array().unwrap().len(), 2);
}

#[test]
fn classify() {
    let scroll = fixture("scroll-twisted-cubic.json");
    let v = ok(&["classify", &scroll, "--delta", "x1,x2,x3"]);
    assert_eq!(v["contained"], true);
    assert_eq!(v["case"]["tag"], "row_in_delta");
    let out = run(&["classify", &scroll, "--delta", "x1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["case"]["tag"], "not_contained");
}

#[test]
fn validate_and_spec_queries() {
    let first = fixture("example-first.json");
    assert_eq!(ok(&["validate", &first])["passed"], true);
    assert!(!ok(&["ideal", &first])["gens"].as_array().unwrap().is_empty());
    assert_eq!(ok(&["projdim", &fixture("example-qprime.json")]), json!(3));
    assert_eq!(ok(&["cd", &fixture("example-qprime.json")])["cd"], 3);
    assert_eq!(ok(&["arabound", &fixture("example-qprime.json")])["bound"], 4);
    assert_eq!(ok(&["arabound", "--generic-r", "4"])["ara"], 5);
    assert_eq!(ok(&["fibercheck", &fixture("fiber.json")])["fiber_shape"], true);
}

#[test]
fn invalid_spec_exits_one() {
    let dir = TempDir::new().unwrap();
    let mut spec: Value = serde_json::from_str(&std::fs::read_to_string(fixture("example-qprime.json")).unwrap()).unwrap();
    spec["components"][2]["p"] = json!(["d", "g"]);
    let p = write(dir.path(), "bad.json", spec);
    let out = run(&["validate", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["passed"], false);
    let out = run(&["--envelope", "projdim", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["status"], "invalid");
}

#[test]
fn synth_and_verify() {
    let first = fixture("example-first.json");
    let v = ok(&["synth", &first]);
    assert_eq!(v["verified"], Value::Null);
    let v = ok(&["synth", "--verify", &first]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["count"], 6);
    assert_eq!(ok(&["verify", &fixture("example-qprime.json")])["verified"], true);

    let dir = TempDir::new().unwrap();
    let gens = write(dir.path(), "gens.json", json!(["b*d", "e", "f"]));
    let out = run(&["verify", &fixture("example-qprime.json"), &gens]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verified"], false);
}

#[test]
fn synth_is_deterministic() {
    let first = fixture("example-first.json");
    let a = run(&["synth", "--verify", &first]);
    let b = run(&["synth", "--verify", &first]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lattice() {
    let v = ok(&["lattice", "--basis", "1,-2,1,0;0,1,-2,1", "--scroll", &fixture("scroll-twisted-cubic.json")]);
    assert_eq!(v["equals_scroll_minors"], true);
    let v = ok(&["lattice", &fixture("lattice-twisted-cubic.json")]);
    assert_eq!(v["gens"].as_array().unwrap().len(), 3);
}

#[test]
fn prime_field() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "f.json", json!({"gens": ["x^5 - y^5"]}));
    let v = ok(&["--field", "Fp=5", "radmember", &p, "x - y"]);
    assert_eq!(v["member"], true);
    assert_eq!(v["characteristic"], 5);
}

#[test]
fn envelope_wraps_output() {
    let v = ok(&["--envelope", "projdim", &fixture("example-qprime.json")]);
    assert_eq!(v, json!({"status": "ok", "payload": 3, "diagnostics": []}));
}

#[test]
fn errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["projdim", "/nonexistent/spec.json"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", json!({"gens": ["x +* y"]}));
    let out = run(&["--envelope", "gb", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["status"], "error");
    assert_eq!(run(&["--field", "Fp=4", "gb", &bad]).status.code(), Some(2));
}
