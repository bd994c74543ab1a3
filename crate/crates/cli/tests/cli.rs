use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn heegaard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heegaard"))
        .args(args)
        .output()
        .expect("run heegaard")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    Path::new(DATA).join(name).display().to_string()
}

fn write_json(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.display().to_string()
}

fn shipped_cert() -> Value {
    serde_json::from_str(&std::fs::read_to_string(data("mh_distance.json")).unwrap()).unwrap()
}

#[test]
fn generate_writes_a_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = heegaard(&[
        "generate",
        "mh",
        "--l1",
        "1/1",
        "--ra",
        "-1/1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let spec: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(spec["family"], "mh");
    assert_eq!(spec["slots"].as_array().unwrap().len(), 4);
}

#[test]
fn generate_mxi_uses_slope_words() {
    let o = heegaard(&["generate", "mxi", "--a0", "0/1", "--a1", "1/0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let spec = stdout_json(&o);
    let words: Vec<&str> = spec["slots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["word_a"].as_str().unwrap())
        .collect();
    assert_eq!(words, ["b", "a"]);
}

#[test]
fn generate_rejects_bad_parameters() {
    for args in [
        &["generate", "mh", "--l1", "x/y"][..],
        &["generate", "mh", "--nope", "1/1"],
        &["generate", "mxi", "--a0", "0/1"],
        &["generate", "klein"],
    ] {
        assert_eq!(code(&heegaard(args)), 2, "{args:?}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "generate", "hybrid", "--b0", "1/2", "--b1", "-2/1", "--r3", "3/1", "--json",
    ];
    let (a, b) = (heegaard(&args), heegaard(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let report = stdout_json(&a);
    assert_eq!(report["schema"], "heegaard-report/1");
    assert_eq!(report["status"], "pass");
    assert_eq!(report["artifact"]["family"], "hybrid");
}

#[test]
fn derive_writes_two_specs() {
    let dir = tempfile::tempdir().unwrap();
    let o = heegaard(&[
        "derive",
        &data("mh_spec.json"),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for i in [1, 2] {
        let p: PathBuf = dir.path().join(format!("mh_spec.derived-{i}.json"));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        assert_eq!(v["family"], "mh");
    }
}

#[test]
fn derive_names_the_failing_hypothesis() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec: Value =
        serde_json::from_str(&std::fs::read_to_string(data("mh_spec.json")).unwrap()).unwrap();
    let slot = &mut spec["slots"][0];
    assert_eq!(slot["label"], "λ1");
    slot.as_object_mut().unwrap().remove("curve");
    slot["word_b"] = "aa".into();
    let path = write_json(dir.path(), "bad.json", &spec);
    let o = heegaard(&["derive", &path, "--json"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL doubly-primitive(λ1,B-side)"));
    let report = stdout_json(&o);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["doubly-primitive(λ1,B-side)"]);
    assert!(!dir.path().join("bad.derived-1.json").exists());
}

#[test]
fn missing_input_is_a_usage_error() {
    assert_eq!(code(&heegaard(&["derive", "/nonexistent/spec.json"])), 2);
    assert_eq!(
        code(&heegaard(&[
            "verify",
            "/nonexistent/c.json",
            "--kind",
            "distance"
        ])),
        2
    );
}

#[test]
fn shipped_certificate_verifies() {
    let o = heegaard(&[
        "verify",
        &data("mh_distance.json"),
        "--kind",
        "distance",
        "--json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["status"], "pass");
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = shipped_cert();
    let (m1, m2) = (
        cert["side1_meridians"].clone(),
        cert["side2_meridians"].clone(),
    );
    cert["side1_meridians"] = m2;
    cert["side2_meridians"] = m1;
    let path = write_json(dir.path(), "swapped.json", &cert);
    assert_eq!(code(&heegaard(&["verify", &path, "--kind", "distance"])), 1);
}

#[test]
fn schema_problems_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = shipped_cert();
    cert["schema"] = "heegaard-cert/0".into();
    let old = write_json(dir.path(), "old.json", &cert);
    assert_eq!(code(&heegaard(&["verify", &old, "--kind", "distance"])), 2);
    let cert = data("mh_distance.json");
    assert_eq!(code(&heegaard(&["verify", &cert, "--kind", "dcp"])), 2);
    assert_eq!(code(&heegaard(&["verify", &cert, "--kind", "torus"])), 2);
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, verify_kind) in [("distance", "distance"), ("dcp", "dcp"), ("stab", "stab")] {
        let out = dir.path().join(format!("{kind}.json"));
        let o = heegaard(&[
            "certify",
            &data("mh_spec.json"),
            "--kind",
            kind,
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{kind}: {}", stderr(&o));
        let o = heegaard(&["verify", out.to_str().unwrap(), "--kind", verify_kind]);
        assert_eq!(code(&o), 0, "{kind}: {}", stderr(&o));
    }
}

#[test]
fn check_tools() {
    let o = heegaard(&["check", "primitive", "aab", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["checks"][0]["pass"], true);
    assert_eq!(code(&heegaard(&["check", "primitive", "aa"])), 1);
    assert_eq!(code(&heegaard(&["check", "basis", "ab", "b"])), 0);
    assert_eq!(code(&heegaard(&["check", "basis", "ab", "ba"])), 1);

    let o = heegaard(&["check", "farey-dist", "0/1", "1/1", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["checks"][0]["details"]
        .to_string()
        .contains('1'));

    let o = heegaard(&["check", "classify", "x", "y"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("TypeB"), "{}", stderr(&o));

    assert_eq!(code(&heegaard(&["check", "primitive", "a1"])), 2);
    assert_eq!(code(&heegaard(&["check", "frobnicate", "a"])), 2);
}
