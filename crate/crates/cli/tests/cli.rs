use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bracelab(args: &[&str]) -> Output {
    bracelab_env(args, None)
}

fn bracelab_env(args: &[&str], max_order: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bracelab"));
    cmd.args(args).env_remove("BRACELAB_MAX_ORDER");
    if let Some(m) = max_order {
        cmd.env("BRACELAB_MAX_ORDER", m);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = bracelab(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn family(dir: &Path, f: &str, m: &str, p: &str) -> PathBuf {
    construct(dir, &format!("{f}_{m}_{p}.json"), &["--family", f, "--m", m, "--p", p])
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_family_and_abelian() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E0", "1", "3");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&e).unwrap()).unwrap();
    assert_eq!(doc["order"], 9);
    assert_eq!(doc["labels"][4], "(1,1)");
    let o = bracelab(&["construct", "--abelian", "5"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["order"], 5);
    assert!(doc.get("labels").is_none());
}

#[test]
fn form_routes_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let fam = bracelab(&["construct", "--family", "E1", "--m", "2", "--p", "5"]);
    let inline = bracelab(&["construct", "--from-form", "diag(2,1)@F5"]);
    assert_eq!(fam.stdout, inline.stdout);
    let form = dir.path().join("form.json");
    std::fs::write(&form, r#"{"p": 5, "dim": 2, "matrix": [[2, 0], [0, 1]]}"#).unwrap();
    let file = bracelab(&["construct", "--from-form", p(&form)]);
    assert_eq!(fam.stdout, file.stdout);
}

#[test]
fn bad_construct_arguments() {
    assert_eq!(code(&bracelab(&["construct", "--family", "E0", "--m", "0", "--p", "3"])), 2);
    assert_eq!(code(&bracelab(&["construct", "--family", "E1", "--m", "1", "--p", "4"])), 2);
    assert_eq!(code(&bracelab(&["construct", "--from-form", "diag(1,1)@F6"])), 2);
    assert_eq!(code(&bracelab(&["construct"])), 2);
    assert_eq!(code(&bracelab_env(&["construct", "--family", "E1", "--m", "1", "--p", "5"], Some("100"))), 3);
}

#[test]
fn product_of_documents() {
    let dir = TempDir::new().unwrap();
    let a = family(dir.path(), "E0", "1", "2");
    let b = construct(dir.path(), "c3.json", &["--abelian", "3"]);
    let prod = construct(dir.path(), "prod.json", &["--product", p(&a), p(&b)]);
    let o = bracelab(&["validate", p(&prod)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order 12"));
}

#[test]
fn analyze_e0_1_3() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E0", "1", "3");
    let o = bracelab(&["analyze", p(&e), "--json"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["dedekind"]["dedekind"], true);
    assert_eq!(r["nilpotency"]["central"], 2);
    assert_eq!(r["extraspecial"]["classification"], "E0(1,3)");
    assert_eq!(r["ybe"]["braid_witness"], Value::Null);
    let text = stdout(&bracelab(&["analyze", p(&e)]));
    assert!(text.contains("centrally nilpotent: yes (level 2)"));
    assert!(text.contains("classification: E0(1,3)"));
}

#[test]
fn analyze_abelian_c6() {
    let dir = TempDir::new().unwrap();
    let c6 = construct(dir.path(), "c6.json", &["--abelian", "6"]);
    let r: Value = serde_json::from_slice(&bracelab(&["analyze", p(&c6), "--json"]).stdout).unwrap();
    assert_eq!(r["dedekind"]["dedekind"], true);
    for s in r["series"].as_array().unwrap() {
        assert!(s["length"].as_u64().unwrap() <= 1);
    }
    assert_eq!(r["extraspecial"], Value::Null);
}

#[test]
fn analyze_e1_1_5_has_a_witness() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E1", "1", "5");
    let r: Value = serde_json::from_slice(&bracelab(&["analyze", p(&e), "--json"]).stdout).unwrap();
    assert_eq!(r["dedekind"]["dedekind"], false);
    assert_eq!(r["dedekind"]["witness"].as_array().unwrap().len(), 5);
    assert_eq!(r["extraspecial"]["strong"], false);
    let text = stdout(&bracelab(&["analyze", p(&e)]));
    assert!(text.contains("dedekind: false (non-ideal subbrace <(1,2,0)>"));
}

#[test]
fn round_trip_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E2", "2", "3");
    let first = bracelab(&["analyze", p(&e), "--json"]).stdout;
    let copy = construct(dir.path(), "copy.json", &["--family", "E2", "--m", "2", "--p", "3"]);
    assert_eq!(std::fs::read(&e).unwrap(), std::fs::read(&copy).unwrap());
    let second = bracelab(&["analyze", p(&copy), "--json"]).stdout;
    assert_eq!(first, second);
}

#[test]
fn subbraces_of_e0_1_2() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E0", "1", "2");
    let o = bracelab(&["subbraces", p(&e)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("3 subbraces, 3 ideals"));
}

#[test]
fn enumerate_listing_and_caps() {
    let o = bracelab(&["enumerate", "--additive", "2,2", "--up-to-iso"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2 braces on C2×C2 up to isomorphism"));
    let o = bracelab(&["enumerate", "--additive", "C4xC2", "--up-to-iso", "--json"]);
    let docs: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(docs.as_array().unwrap().len(), 14);
    assert_eq!(code(&bracelab(&["enumerate", "--additive", "17"])), 3);
    assert_eq!(code(&bracelab(&["enumerate", "--additive", "2,x"])), 2);
}

#[test]
fn ybe_and_classify() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E0", "1", "3");
    let o = bracelab(&["ybe", p(&e)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "braid: true\ninvolutive: true\nnondegenerate: true\n");
    let e2 = family(dir.path(), "E0", "2", "3");
    let o = bracelab(&["classify", p(&e2)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("E0(1,3)\n"));
    let weak = family(dir.path(), "E1", "1", "5");
    assert_eq!(code(&bracelab(&["classify", p(&weak)])), 1);
    let c5 = construct(dir.path(), "c5.json", &["--abelian", "5"]);
    assert_eq!(code(&bracelab(&["classify", p(&c5)])), 1);
}

#[test]
fn invalid_documents() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"order": 2, "add": [[0,1],[1,0]], "mul": [[0,1],[1,1]]}"#).unwrap();
    assert_eq!(code(&bracelab(&["validate", p(&bad)])), 1);
    assert_eq!(code(&bracelab(&["analyze", p(&bad)])), 2);
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(code(&bracelab(&["validate", p(&garbage)])), 2);
    let labels = dir.path().join("labels.json");
    std::fs::write(&labels, r#"{"order": 1, "add": [[0]], "mul": [[0]], "labels": ["a", "b"]}"#).unwrap();
    assert_eq!(code(&bracelab(&["analyze", p(&labels)])), 2);
    assert_eq!(code(&bracelab(&["analyze", "/nonexistent/file.json"])), 2);
}

#[test]
fn max_order_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let e = family(dir.path(), "E0", "1", "3");
    assert_eq!(code(&bracelab_env(&["analyze", p(&e)], Some("8"))), 3);
    assert_eq!(code(&bracelab_env(&["analyze", p(&e)], Some("9"))), 0);
    assert_eq!(code(&bracelab_env(&["analyze", p(&e)], Some("lots"))), 2);
    let o = bracelab_env(&["enumerate", "--additive", "17"], Some("17"));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("1 braces on C17"));
}

#[test]
fn verify_theorems() {
    for t in ["dedekind-criterion", "chevalley-bound", "counterexamples"] {
        let o = bracelab(&["verify", "--theorem", t]);
        assert_eq!(code(&o), 0, "{t}: {}", stdout(&o));
        assert!(stdout(&o).starts_with(&format!("{t}: pass")));
    }
    let o = bracelab(&["verify", "--theorem", "central-nilpotency", "--max-order", "8", "--json"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["instances"], 25);
    assert_eq!(code(&bracelab(&["verify", "--theorem", "fermat"])), 2);
    assert_eq!(code(&bracelab(&["verify", "--theorem", "ybe-checks", "--max-order", "17"])), 3);
}
