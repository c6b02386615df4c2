use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endotriv")).args(args).output().unwrap()
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = problem(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn reports_are_byte_identical_across_runs_and_locations() {
    let a = run_on("compute-t", "sl2z_f3.json", &[]);
    let b = run_on("compute-t", "sl2z_f3.json", &[]);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("elsewhere.json");
    std::fs::copy(problem("sl2z_f3.json"), &copy).unwrap();
    let c = run(&["compute-t", copy.to_str().unwrap()]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn compute_t_answers_and_exit_codes() {
    let cases = [
        ("sl2z_f4.json", vec![6]),
        ("sl2z_f2.json", vec![2]),
        ("sl2z_f3.json", vec![2, 2]),
        ("c4_amalg_c4_f2.json", vec![2, 2]),
        ("hnn_c2_identity_f4.json", vec![3]),
        ("z2_times_c2_f4.json", vec![6, 6]),
        ("z_times_free_c2_c2_f4.json", vec![3, 3]),
    ];
    for (file, want) in cases {
        let out = run_on("compute-t", file, &[]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let v = json(&out);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["answer"]["determined"]["invariant_factors"], serde_json::json!(want), "{file}");
        assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    }
    let amb = run_on("compute-t", "hnn_c3_inversion_f3.json", &[]);
    assert_eq!(amb.status.code(), Some(2));
    assert!(json(&amb)["answer"].get("ambiguous").is_some());
}

#[test]
fn jobs_keep_argument_order() {
    let (a, b) = (problem("sl2z_f4.json"), problem("sl2z_f2.json"));
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    let serial = run(&["compute-t", a, b, a]);
    let parallel = run(&["compute-t", "--jobs", "3", a, b, a]);
    assert_eq!(serial.stdout, parallel.stdout);
    let v = json(&serial);
    let orders: Vec<&Value> = v.as_array().unwrap().iter().map(|r| &r["answer"]["determined"]["invariant_factors"]).collect();
    assert_eq!(orders, [&serde_json::json!([6]), &serde_json::json!([2]), &serde_json::json!([6])]);
}

#[test]
fn malformed_input_exits_with_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"schema\": 1, \"construction\": ").unwrap();
    let out = run(&["compute-t", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = run(&["compute-t", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn other_commands() {
    let out = run_on("components", "c2_free_c2.json", &["--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["components"], 2);
    let out = run_on("components", "c2_free_c3.json", &["--p", "2"]);
    assert_eq!(json(&out)["components"], 1);

    let out = run_on("snf", "snf_example.json", &[]);
    assert_eq!(json(&out)["invariant_factors"], serde_json::json!([2, 6, 12]));

    let out = run(&["endotrivial", "--group", "C4", "--field", "F2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["endotrivial"], true);

    let out = run(&["diagonal-q8", "--field", "F2"]);
    let v = json(&out);
    assert_eq!((v["class_x"].clone(), v["class_y"].clone()), (Value::from(1), Value::from(1)));

    let out = run(&["--format", "text", "compute-t", problem("sl2z_f4.json").to_str().unwrap()]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("T(G) = Z/6"));
}
