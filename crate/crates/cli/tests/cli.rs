use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use solvcert_cli::doc::CertificateDoc;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_solvcert"))
}

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn check(name: &str) -> Output {
    run(&["check", spec(name).to_str().unwrap()])
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_genus3_example() {
    let o = check("pm1-n2.json");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("1-solvable (Genus3)"), "{out}");
    assert!(out.contains("μ̄123 = 7 = 1 · 7"), "{out}");
}

#[test]
fn check_alexander_example() {
    let o = check("12a0596.json");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("AlexanderLeading"), "{out}");
    assert!(out.contains("a4 = 6"), "{out}");
}

#[test]
fn undetermined_exits_two() {
    let o = check("flat-genus3.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not determined"));
    let o = check("trefoil.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("no derivative known"));
}

#[test]
fn genus1_and_genus2_examples() {
    let o = check("genus1-rebased.json");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Genus1"));
    let o = check("genus2-even.json");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Genus2SL"));
}

#[test]
fn bad_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("empty.json", "", "empty"),
        ("dims.json", r#"{"name":"d","genus":1,"seifert":[[1,0,0],[0,1,0]]}"#, "row 1 has 3 entries"),
        ("det.json", r#"{"name":"z","genus":1,"seifert":[[1,0],[0,1]]}"#, "det(M − Mᵀ)"),
        (
            "key.json",
            r#"{"name":"k","genus":2,"seifert":[[0,0,1,0],[0,0,0,1],[0,0,0,0],[0,0,0,0]],"profile":{"arf":[0,0],"sato_levine":{"1,3":0}}}"#,
            "1,3",
        ),
        ("both.json", r#"{"name":"b","genus":2,"seifert":[[0,1],[0,0]],"alexander":[1]}"#, "not both"),
    ];
    for (file, text, needle) in cases {
        let p = write_tmp(&dir, file, text);
        let o = run(&["check", &p]);
        assert_eq!(o.status.code(), Some(1), "{file}: {}", stdout(&o));
        let err = stderr(&o);
        assert!(err.starts_with("error:"), "{file}: {err}");
        assert!(err.contains(needle), "{file}: {err}");
    }
}

#[test]
fn certificate_documents_are_stable_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["pm1-n2.json", "12a0596.json", "genus1-rebased.json", "genus2-even.json", "flat-genus3.json"] {
        let path = spec(name);
        let args = ["check", "--json", "--issued-at", "2026-01-01T00:00:00Z", path.to_str().unwrap()];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{name}");
        let text = stdout(&a);
        let doc = CertificateDoc::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{name}");
        let p = write_tmp(&dir, name, &text);
        let v = run(&["verify", &p]);
        assert_eq!(v.status.code(), Some(0), "{name}: {}{}", stdout(&v), stderr(&v));
        assert!(stdout(&v).contains("certificate valid"));
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["check", "--json", "--issued-at", "2026-01-01T00:00:00Z", spec("pm1-n2.json").to_str().unwrap()]);
    let text = stdout(&o);

    let mut doc = CertificateDoc::from_json(&text).unwrap();
    doc.input.name.push('x');
    let p = write_tmp(&dir, "hash.json", &doc.to_json());
    let v = run(&["verify", &p]);
    assert_eq!(v.status.code(), Some(2));
    assert!(stdout(&v).contains("hash"));

    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let triple = &mut value["input"]["profile"]["triple"]["1,2,3"];
    *triple = serde_json::json!(8);
    let mut doc: CertificateDoc = serde_json::from_value(value).unwrap();
    doc.input_sha256 = solvcert_cli::spec::spec_hash(&doc.input);
    let p = write_tmp(&dir, "triple.json", &doc.to_json());
    let v = run(&["verify", &p]);
    assert_eq!(v.status.code(), Some(2));
    assert!(stdout(&v).contains("rejected"));

    let p = write_tmp(&dir, "junk.json", "{\"tool\":\"solvcert\"}");
    assert_eq!(run(&["verify", &p]).status.code(), Some(1));
}

#[test]
fn plans() {
    let o = run(&["plan", spec("pm1-n2.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("move plan"), "{out}");

    let o = run(&["plan", "--json", spec("pm1-n2.json").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["plan"]["triple_moves"].as_array().unwrap().len(), 1);
    assert_eq!(v["statuses"], serde_json::json!(["emitted", "deferred", "emitted"]));
    assert_eq!(v["plan"]["sato_levine"]["kind"], "deferred");
    assert!(v["plan"]["arf"].is_object());

    let o = run(&["plan", "--json", spec("pm1-n2-trivial.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["statuses"], serde_json::json!(["empty", "empty", "empty"]));

    let o = run(&["plan", spec("flat-genus3.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("stage 1 (triple linking)"));

    let o = run(&["plan", spec("12a0596.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ingest_and_batch() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.json");
    let o = run(&["ingest", spec("knots.csv").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("genus 3"));
    let knots: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let names: Vec<&str> = knots.as_array().unwrap().iter().map(|k| k["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["12a0596", "square-ish"]);

    let empty = write_tmp(&dir, "empty.csv", "");
    let o = run(&["ingest", &empty]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");

    let o = run(&["batch", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["total"], 2);
    assert_eq!(r["certified"], 1);
    assert_eq!(r["not_determined"], serde_json::json!(["square-ish"]));

    let o = run(&["batch", "--json", spec("").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = r["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(r["total"], 7);
    assert_eq!(r["certified"], 5);
}

#[test]
fn wedge_and_snf() {
    let o = run(&["wedge", "--matrix", "[[1,0,0],[0,1,0],[0,0,1]]"]);
    assert_eq!(stdout(&o).trim(), "[[1, 0, 0], [0, 1, 0], [0, 0, 1]]");
    let o = run(&["wedge", "--matrix", "[[2,0,0],[0,-2,0],[0,0,-4]]"]);
    assert_eq!(stdout(&o).trim(), "[[-4, 0, 0], [0, -8, 0], [0, 0, 8]]");
    let o = run(&["wedge", "--matrix", "[[2,0,0],[0,-2,0],[0,0,-4]]", "--mod2"]);
    assert_eq!(stdout(&o).trim(), "[[0, 0, 0], [0, 0, 0], [0, 0, 0]]");
    let o = run(&["wedge", "--matrix", "[[1,2],[3,4]]", "--grade", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["snf", "--matrix", "[[4,0],[0,6]]"]);
    assert!(stdout(&o).contains("invariant factors: 2, 12"));
    let o = run(&["snf", "--matrix", "[[1,2],[3]]"]);
    assert_eq!(o.status.code(), Some(1));
}
