use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use affine_line::fincat::json::SquareJson;
use affine_line::fincat::{FinCat, FunctorData, SquareData};
use affine_line_cli::commands::FunctorFile;
use affine_line_cli::Report;
use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_affine-line"));
    c.env_remove("AFFINE_LINE_OUT_DIR");
    c
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn evalpha_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &json!({ "ring": ["t"], "generators": 1, "relations": [["t^2"]] }));
    let out = bin().args(["mod", "evalpha", "--alpha", "0", "--module"]).arg(&m).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["canonical"], "free rank 1; factors []");
    assert!(v["result"]["presentation"].is_object());
}

#[test]
fn evalpha_at_a_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &json!({ "ring": ["t"], "generators": 1, "relations": [["t^2-1"]] }));
    let out = bin().args(["mod", "evalpha", "--alpha", "s^2", "--ring", "s", "--module"]).arg(&m).output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["result"]["canonical"], "free rank 0; factors [s^4-1]");
}

#[test]
fn type_of_a_spec() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", &json!({ "source": ["t"], "target": ["s"], "images": ["s^2+1"] }));
    let out = bin().args(["univ", "type", "--spec"]).arg(&s).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["type"], "s^2+1");
}

#[test]
fn exact_on_a_comma_square() {
    let dir = tempfile::tempdir().unwrap();
    // [1] → [3], 0 ↦ 0, 1 ↦ 2
    let a = Arc::new(FinCat::ordinal(1));
    let b = Arc::new(FinCat::ordinal(3));
    let u = FunctorData::from_fns(a.clone(), b.clone(), |x| Ok(2 * x), |f| Ok(b.hom(2 * a.src(f), 2 * a.dst(f))[0])).unwrap();
    let sq = SquareData::comma_over(&u, 1).unwrap();
    let p = write(dir.path(), "sq.json", &serde_json::to_value(SquareJson::from_square(&sq)).unwrap());
    let out = bin().args(["fincat", "exact", "--square"]).arg(&p).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "Certified");
}

#[test]
fn comma_and_sieve() {
    let dir = tempfile::tempdir().unwrap();
    let a = Arc::new(FinCat::ordinal(2));
    let b = Arc::new(FinCat::ordinal(3));
    let u = FunctorData::from_fns(a.clone(), b.clone(), |x| Ok(x), |f| Ok(b.hom(a.src(f), a.dst(f))[0])).unwrap();
    let p = write(dir.path(), "u.json", &serde_json::to_value(FunctorFile::from_functor(&u)).unwrap());
    let out = bin().args(["fincat", "sieve", "--functor"]).arg(&p).output().unwrap();
    assert_eq!(stdout_json(&out)["kind"], "Sieve");
    let name = b.object_name(2).to_string();
    let out = bin().args(["fincat", "comma", "--object", &name, "--functor"]).arg(&p).output().unwrap();
    let v = stdout_json(&out);
    // everything in [2] lies over 2
    assert_eq!(v["objects"].as_array().unwrap().len(), 3);
    assert_eq!(v["certificate"]["verdict"], "ContractibleByInitial");
}

#[test]
fn decompose_and_projection() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", &json!({ "source": ["t"], "target": ["s"], "images": ["s^2"] }));
    let m = write(dir.path(), "m.json", &json!({ "ring": ["t"], "generators": 1, "relations": [["t-4"]] }));
    let out = bin().args(["univ", "decompose", "--spec"]).arg(&s).arg("--module").arg(&m).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["direct"]["canonical"], "free rank 0; factors [s^2-4]");

    let e4 = write(dir.path(), "e4.json", &json!({ "dim": 1, "matrix": [["4"]] }));
    let e2 = write(dir.path(), "e2.json", &json!({ "dim": 1, "matrix": [["2"]] }));
    let out = bin().args(["univ", "projection", "--spec"]).arg(&s).arg("--left").arg(&e4).arg("--right").arg(&e2).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["extension_form"]["isomorphic"], false);
}

#[test]
fn tensor_routes_and_hom() {
    let dir = tempfile::tempdir().unwrap();
    let e = write(dir.path(), "e.json", &json!({ "dim": 2, "matrix": [["1", "1"], ["0", "1"]] }));
    let f = write(dir.path(), "f.json", &json!({ "dim": 1, "matrix": [["1"]] }));
    let canon = |route: &str| {
        let out = bin().args(["mod", "tensor", "--route", route, "--left"]).arg(&e).arg("--right").arg(&f).output().unwrap();
        stdout_json(&out)["canonical"].clone()
    };
    assert_eq!(canon("presentation"), canon("coequalizer"));
    assert_eq!(canon("presentation"), "free rank 0; factors [t-1]");
    let g = write(dir.path(), "g.json", &json!({ "dim": 1, "matrix": [["2"]] }));
    let out = bin().args(["mod", "tensor", "--left"]).arg(&e).arg("--right").arg(&g).output().unwrap();
    assert_eq!(stdout_json(&out)["canonical"], "free rank 0; factors []");
    let out = bin().args(["mod", "hom", "--left"]).arg(&e).arg("--right").arg(&e).output().unwrap();
    assert_eq!(stdout_json(&out)["intertwiners"], 2);
    let out = bin().args(["mod", "iso", "--left"]).arg(&e).arg("--right").arg(&f).output().unwrap();
    assert_eq!(stdout_json(&out)["isomorphic"], false);
}

#[test]
fn derived_ev0_homology() {
    let dir = tempfile::tempdir().unwrap();
    let e = write(dir.path(), "e.json", &json!({ "dim": 2, "matrix": [["0", "1"], ["0", "0"]] }));
    let out = bin().args(["derived", "ev0", "--endo"]).arg(&e).output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["homology"]["0"], 1);
    assert_eq!(v["homology"]["1"], 1);
}

#[test]
fn an_two_variables() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", &json!({ "target": ["s"], "images": ["s", "s^2"] }));
    let m = write(dir.path(), "m.json", &json!({ "ring": ["t1", "t2"], "generators": 1, "relations": [["t1-1"], ["t2-t1"]] }));
    let out = bin().args(["univ", "an", "--spec"]).arg(&s).arg("--module").arg(&m).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["isomorphic"], true);
}

#[test]
fn trunc_adjunctions() {
    let out = bin().args(["fincat", "trunc", "--k", "3"]).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["adjunctions"].as_array().unwrap().iter().all(|a| a["holds"] == true));
}

#[test]
fn schema_violation_exits_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &json!({ "ring": ["t"], "generators": 1, "relations": [[3]] }));
    let out = bin().args(["mod", "iso", "--left"]).arg(&m).arg("--right").arg(&m).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("m.json") && err.contains("relations[0][0]"), "{err}");
}

#[test]
fn single_suite_and_env_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["suite", "run", "--seed", "5", "--suites", "monoidal-unit"])
        .env("AFFINE_LINE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    let names: Vec<&str> = report.suites.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["monoidal-unit"]);
    // emitted JSON re-parses to an equal value
    assert_eq!(report.to_json(), text);
    assert!(fs::read_to_string(dir.path().join("report.txt")).unwrap().contains("PASS monoidal-unit"));
}

#[test]
fn malformed_config_is_an_error() {
    let out = bin().args(["suite", "run", "--max-dim", "0", "--suites", "derived"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["suite", "run", "--suites", "nonsense"]).output().unwrap();
    assert!(!out.status.success());
}
