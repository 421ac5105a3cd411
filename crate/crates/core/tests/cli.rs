//! End-to-end runs of the `optuple` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use optuple::classes::TupleClass;
use optuple::matrices::{CMat, MatrixTuple, C64};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_optuple"));
    c.env_remove("OPTUPLE_REGISTRY");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad stdout ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn real(rows: &[&[f64]]) -> CMat {
    let d = rows.len();
    CMat::from_fn(d, d, |i, j| C64::new(rows[i][j], 0.0))
}

fn write_tuple(dir: &Path, name: &str, mats: Vec<CMat>) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, MatrixTuple::new(mats).unwrap().to_json().to_string()).unwrap();
    p
}

fn write_class(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_tuple(dir.path(), "t.json", vec![real(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]])]);
    let out = run(dir.path(), &["decompose", s(&t)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_empty_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, MatrixTuple::zeros(1, 0).to_json().to_string()).unwrap();
    let out = run(dir.path(), &["decompose", s(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["blocks"].as_array().unwrap().is_empty());

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "dim": 2, "matrices": [[[1,0],[0,1]], [[1,0,0],[0,1,0],[0,0,1]]]}"#).unwrap();
    let out = run(dir.path(), &["decompose", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));

    let big = write_tuple(dir.path(), "big.json", vec![CMat::identity(4, 4)]);
    assert_eq!(run(dir.path(), &["--max-dim", "3", "decompose", s(&big)]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_tuple(dir.path(), "t.json", vec![real(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 5.0]]), CMat::identity(3, 3)]);
    let a = run(dir.path(), &["--seed", "3", "decompose", s(&t)]);
    let b = run(dir.path(), &["--seed", "3", "decompose", s(&t)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn equiv_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_tuple(dir.path(), "a.json", vec![real(&[&[1.0, 2.0], &[0.0, 3.0]])]);
    let b = write_tuple(dir.path(), "b.json", vec![real(&[&[3.0, 0.0], &[2.0, 1.0]])]);
    let c = write_tuple(dir.path(), "c.json", vec![real(&[&[1.0, 0.0], &[0.0, 3.0]])]);
    assert_eq!(run(dir.path(), &["equiv", s(&a), s(&a)]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["equiv", s(&a), s(&b)]).status.code(), Some(0));
    let out = run(dir.path(), &["equiv", s(&a), s(&c)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["equivalent"], Value::Bool(false));
}

#[test]
fn btransform_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_tuple(dir.path(), "a.json", vec![real(&[&[1.0, 2.0], &[0.0, 3.0]]), real(&[&[0.0, 1.0], &[1.0, 0.0]])]);
    let out = run(dir.path(), &["btransform", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let b = dir.path().join("b.json");
    std::fs::write(&b, &out.stdout).unwrap();
    let back = run(dir.path(), &["btransform", "--inverse", s(&b)]);
    assert_eq!(back.status.code(), Some(0));
    let orig = MatrixTuple::from_json(&serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap()).unwrap();
    let got = MatrixTuple::from_json(&json(&back)).unwrap();
    assert!(orig.max_distance(&got) < 1e-10);

    let j = write_tuple(dir.path(), "j.json", vec![real(&[&[0.0, 1.0], &[0.0, 0.0]])]);
    assert_eq!(run(dir.path(), &["btransform", "--inverse", s(&j)]).status.code(), Some(2));
}

#[test]
fn split_jordan_plus_scalar() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_tuple(dir.path(), "t.json", vec![real(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 5.0]])]);
    let out_dir = dir.path().join("out");
    let out = run(dir.path(), &["split", s(&t), "--ideal", "jointly-normal", "--out-dir", s(&out_dir)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["part"]["dim"], 1);
    assert_eq!(v["complement"]["dim"], 2);
    let read = |name: &str| MatrixTuple::from_json(&serde_json::from_str(&std::fs::read_to_string(out_dir.join(name)).unwrap()).unwrap()).unwrap();
    assert_eq!(read("t.part.json").dim(), 1);
    assert_eq!(read("t.complement.json").dim(), 2);
    assert!(out_dir.join("t.projections.json").exists());
    assert_eq!(run(dir.path(), &["split", s(&t), "--ideal", "bogus"]).status.code(), Some(2));
}

#[test]
fn classify_uses_registry() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_tuple(dir.path(), "t.json", vec![real(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]])]);
    let reg = dir.path().join("reg");
    let first = run(dir.path(), &["--registry", s(&reg), "classify", s(&t)]);
    assert_eq!(first.status.code(), Some(0));
    assert!(reg.join("index.json").exists());
    let second = run(dir.path(), &["--registry", s(&reg), "classify", s(&t)]);
    assert_eq!(first.stdout, second.stdout);
    let class = TupleClass::from_json(&json(&first)).unwrap();
    let mut mults: Vec<String> = class.entries().iter().map(|(_, m)| m.to_string()).collect();
    mults.sort();
    assert_eq!(mults, ["1", "2"]);

    // the environment variable wins over the flag
    let env_reg = dir.path().join("env-reg");
    let out = bin().current_dir(dir.path()).env("OPTUPLE_REGISTRY", &env_reg).args(["--registry", s(&reg), "classify", s(&t)]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(env_reg.join("index.json").exists());
}

#[test]
fn class_ops() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = write_class(dir.path(), "p2.json", r#"{"labels":[{"id":"P","kind":"atom","dim":1,"mult":2}]}"#);
    let p1 = write_class(dir.path(), "p1.json", r#"{"labels":[{"id":"P","kind":"atom","dim":1,"mult":1}]}"#);
    let class_of = |out: &Output| TupleClass::from_json(&json(out)).unwrap().to_string();

    let out = run(dir.path(), &["class-op", "oplus", s(&p2), s(&p1)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(class_of(&out), "{P:3}");
    assert_eq!(class_of(&run(dir.path(), &["class-op", "minus-delta", s(&p2), s(&p1)])), "{P:1}");
    assert_eq!(class_of(&run(dir.path(), &["class-op", "scalar-mul", s(&p1), "--scalar", "aleph0"])), "{P:aleph0}");
    assert_eq!(run(dir.path(), &["class-op", "minus-delta", s(&p1), s(&p2)]).status.code(), Some(2));

    let flags = json(&run(dir.path(), &["class-op", "flags", s(&p1)]));
    assert!(flags["flags"].as_array().unwrap().iter().any(|f| f == "multiplicity_free"));
    let part = json(&run(dir.path(), &["class-op", "partition", s(&p2)]));
    assert!(part["levels"].is_array());

    let bad = write_class(dir.path(), "bad.json", r#"{"labels":[{"id":"F","kind":"fractal","dim":"omega","mult":1}]}"#);
    assert_eq!(run(dir.path(), &["class-op", "dim", s(&bad)]).status.code(), Some(4));
    let tall = write_class(dir.path(), "tall.json", r#"{"labels":[{"id":"F","kind":"fractal","dim":"omega","mult":"aleph5"}]}"#);
    assert_eq!(run(dir.path(), &["class-op", "dim", s(&tall)]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--aleph-tower", "5", "class-op", "dim", s(&tall)]).status.code(), Some(0));
}

#[test]
fn laws_small_registry() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["laws", "--registry-size", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["unexpected_failures"], 0);
    let laws = v["laws"].as_array().unwrap();
    assert!(laws.iter().all(|l| l["law"].is_string() && l["cases"].is_u64() && l["failures"].is_array()));
    assert_eq!(run(dir.path(), &["laws", "--registry-size", "9"]).status.code(), Some(2));
}
