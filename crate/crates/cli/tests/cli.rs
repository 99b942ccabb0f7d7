use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivedlab")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn err_json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn temp(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("derivedlab-{}-{name}", std::process::id()));
    let _ = std::fs::remove_file(&p);
    p
}

#[test]
fn zmod4_is_quasi_frobenius() {
    let v = ok_json(&["ring", "qf-check", "--ring", "zmod:4"]);
    assert_eq!(v["quasi_frobenius"], true);
    let v = ok_json(&["ring", "qf-check", "--ring", "upper_triangular:2:2"]);
    assert_eq!(v["quasi_frobenius"], false);
}

#[test]
fn gldim_of_a2_is_one() {
    let v = ok_json(&["ring", "gldim", "--ring", "path_algebra:1->2:p=2", "--max", "3"]);
    assert_eq!(v, serde_json::json!({"gldim": 1}));
    let v = ok_json(&["ring", "gldim", "--ring", "dual_numbers:2", "--max", "4"]);
    assert_eq!(v["gldim"], "inf");
}

#[test]
fn counterexample_growth() {
    let v = ok_json(&["experiment", "counterexample", "--ring", "dual_numbers:2", "--N", "4"]);
    assert_eq!(v["growth"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(v["passed"], true);
    let out = run(&["experiment", "counterexample", "--ring", "dual_numbers:2", "--N", "4", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("growth          [1, 2, 3, 4]"), "{text}");
}

#[test]
fn validation_errors_exit_2() {
    let e = err_json(&["module", "hom", "--ring", "zmod:4", "--source", "simple:7", "--target", "regular"], 2);
    assert_eq!(e["error"]["kind"], "Invalid");
    let e = err_json(&["ring", "check", "--ring", "no_such_ring:3"], 2);
    assert_eq!(e["error"]["exit_code"], 2);
    let e = err_json(&["ring", "frobnicate"], 2);
    assert_eq!(e["error"]["kind"], "Usage");
    err_json(&["module", "hom", "--source", "regular", "--target", "regular"], 2);
}

#[test]
fn computational_errors_exit_3() {
    let e = err_json(&["experiment", "counterexample", "--ring", "upper_triangular:2:2", "--N", "2"], 3);
    assert_eq!(e["error"]["kind"], "NotQuasiFrobenius");
    let e = err_json(&["derived", "certify", "--ring", "zmod:4", "--complex", "single:0:regular"], 3);
    assert_eq!(e["error"]["kind"], "NotAcyclic");
    let e = err_json(&["hereditary", "decompose", "--ring", "dual_numbers:2", "--complex", "single:0:regular"], 3);
    assert_eq!(e["error"]["kind"], "NotHereditary");
}

#[test]
fn session_round_trip() {
    let s = temp("session.json");
    let sp = s.to_str().unwrap();
    ok_json(&["ring", "preset", "--ring", "dual_numbers:2", "--session", sp, "--save", "k"]);
    ok_json(&["module", "resolve", "--ring", "@k", "--module", "simple:0", "--depth", "3", "--session", sp, "--save", "p"]);
    // the stored complex remembers its ring, so --ring may be dropped
    let v = ok_json(&["complex", "cohomology", "--complex", "@p", "--session", sp]);
    let sizes: Vec<u64> = v["cohomology"].as_array().unwrap().iter().map(|e| e["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [2, 1, 1, 2]);
    ok_json(&["complex", "truncate", "--complex", "@p", "--le", "-1", "--session", sp, "--save", "t", "--save-map", "q"]);
    let v = ok_json(&["complex", "cone", "--map", "@q", "--session", sp, "--save", "c"]);
    assert_eq!(v["acyclic"], false);

    let acyc = ok_json(&["complex", "tot", "--i", "@q", "--session", sp, "--save", "e"]);
    assert_eq!(acyc["acyclic"], true);
    let cert = ok_json(&["derived", "certify", "--complex", "@e", "--session", sp, "--save", "ce"]);
    let v = ok_json(&["derived", "verify", "--certificate", "@ce", "--session", sp]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["complex"], acyc["complex"]);

    // the saved JSON parses back to the same certificate
    let f = temp("cert.json");
    std::fs::write(&f, serde_json::to_string(&cert["certificate"]).unwrap()).unwrap();
    let w = ok_json(&["derived", "verify", "--ring", "dual_numbers:2", "--certificate", f.to_str().unwrap()]);
    assert_eq!(w, v);

    err_json(&["complex", "cohomology", "--complex", "@missing", "--session", sp, "--ring", "zmod:4"], 2);
    let _ = std::fs::remove_file(&s);
    let _ = std::fs::remove_file(&f);
}

#[test]
fn tampered_certificate_is_rejected() {
    let s = temp("tamper-session.json");
    let sp = s.to_str().unwrap();
    ok_json(&["complex", "tot", "--ring", "dual_numbers:2", "--i", "identity:single:0:regular", "--session", sp, "--save", "e"]);
    let cert = ok_json(&["derived", "certify", "--complex", "@e", "--session", sp]);
    let mut text = serde_json::to_string(&cert["certificate"]).unwrap();
    // flip one matrix entry somewhere in the tree
    let pos = text.find("[[1").expect("some nonzero entry");
    text.replace_range(pos + 2..pos + 3, "0");
    let f = temp("bad.json");
    std::fs::write(&f, text).unwrap();
    let out = run(&["derived", "verify", "--ring", "dual_numbers:2", "--certificate", f.to_str().unwrap()]);
    let code = out.status.code().unwrap();
    assert!(code == 2 || code == 3, "{}", String::from_utf8_lossy(&out.stdout));
    let _ = std::fs::remove_file(f);
    let _ = std::fs::remove_file(s);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["derived", "hom", "--ring", "zmod:4", "--source", "single:0:simple:0", "--target", "single:-2:simple:0"];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["size"], 2);
    // canonical re-serialization leaves the text unchanged
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", String::from_utf8(a).unwrap());
}

#[test]
fn module_verbs() {
    let v = ok_json(&["module", "hom", "--ring", "dual_numbers:2", "--source", "regular", "--target", "simple:0", "--elements"]);
    assert_eq!(v["size"], 2);
    assert_eq!(v["elements"].as_array().unwrap().len(), 2);
    let v = ok_json(&["module", "ext", "--ring", "zmod:4", "--source", "simple:0", "--target", "simple:0", "--degree", "2"]);
    assert_eq!(v["size"], 2);
    let v = ok_json(&["module", "cover", "--ring", "path_algebra:1->2", "--module", "simple:0"]);
    assert_eq!(v["projective"], false);
    assert_eq!(v["kernel_size"], 2);
    let v = ok_json(&["module", "iso", "--ring", "zmod:4", "--source", "injective:0", "--target", "regular"]);
    assert_eq!(v["isomorphic"], true);
    let v = ok_json(&["module", "dual", "--ring", "dual_numbers:2", "--module", "simple:0+regular"]);
    assert_eq!(v["module"]["orders"].as_array().unwrap().len(), 3);
}

#[test]
fn derived_verbs() {
    let v = ok_json(&["derived", "replace", "--ring", "zmod:6", "--complex", "single:0:simple:0", "--subcat", "elocal:3"]);
    assert_eq!(v["quasi_iso"], true);
    let v = ok_json(&["derived", "realize", "--ring", "zmod:6", "--complex", "single:1:simple:0", "--subcat", "elocal:3"]);
    assert_eq!(v["quasi_iso"], true);
    err_json(&["derived", "replace", "--ring", "zmod:6", "--complex", "single:0:regular", "--subcat", "nonsense"], 2);
}

#[test]
fn hereditary_formula_matches() {
    let v = ok_json(&[
        "hereditary",
        "hom-formula",
        "--ring",
        "path_algebra:1->2",
        "--source",
        "single:0:simple:0",
        "--target",
        "single:-1:simple:1",
    ]);
    assert_eq!(v["sizes_agree"], true);
    assert_eq!(v["bijective"], true);
    assert_eq!(v["hom_d"]["size"], 2);
    let v = ok_json(&["hereditary", "decompose", "--ring", "path_algebra:1->2", "--complex", "resolution:2:simple:0"]);
    assert_eq!(v["legs_quasi_iso"], true);
}

#[test]
fn table_format_is_plain_text() {
    let out = run(&["complex", "cohomology", "--ring", "dual_numbers:2", "--complex", "resolution:2:simple:0", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("degree  orders  size"), "{text}");
}

#[test]
fn out_file_and_selftest() {
    let f = temp("out.json");
    let out = run(&["selftest", "--out", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 60);
    let _ = std::fs::remove_file(f);
}
