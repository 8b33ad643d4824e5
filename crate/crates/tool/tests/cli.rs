use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chromvec"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let record = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (
        out.status.code().unwrap(),
        record,
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

/// ϑ̄(C_n) for odd n from the closed form n cos(π/n) / (1 + cos(π/n)).
fn odd_cycle_theta(n: f64) -> f64 {
    let c = (std::f64::consts::PI / n).cos();
    n * c / (1.0 + c)
}

#[test]
fn param_theta_bar_of_c5() {
    let (code, r, _) = run(&["param", "theta-bar", "cycle:5"]);
    assert_eq!(code, 0);
    let p = &r["parameters"][0];
    assert!((f(&p["value"]) - odd_cycle_theta(5.0)).abs() <= 1e-5);
    assert!(f(&p["gap"]) <= 1e-5);
    assert_eq!(p["method"], "sdp");
    assert_eq!(r["graphs"][0]["n"], 5);
    assert!(r["timestamp"].as_u64().is_some());
}

#[test]
fn param_conventions_and_onehom() {
    let (code, r, _) = run(&["param", "theta-bar", "empty:4"]);
    assert_eq!(code, 0);
    assert_eq!(f(&r["parameters"][0]["value"]), 1.0);
    assert_eq!(r["parameters"][0]["method"], "convention");

    let (code, r, _) = run(&["param", "onehom", "omega:4"]);
    assert_eq!(code, 0);
    assert_eq!(r["onehom"][0]["is_one_homogeneous"], true);

    let (_, r, _) = run(&["param", "onehom", "path:3"]);
    assert_eq!(r["onehom"][0]["is_one_homogeneous"], false);
    assert_eq!(r["onehom"][0]["witness"]["kind"], "vertex");
}

#[test]
fn param_chromatic_and_limit() {
    let (code, r, _) = run(&["param", "chromatic", "petersen"]);
    assert_eq!(code, 0);
    assert_eq!(f(&r["parameters"][0]["value"]), 3.0);
    assert_eq!(r["parameters"][0]["coloring"].as_array().unwrap().len(), 10);
    let (code, r, _) = run(&["param", "chromatic", "complete:5", "--limit", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["parameters"][0]["status"], "exceeds-limit");
    assert_eq!(r["parameters"][0]["exceeds_limit"], 3);
}

#[test]
fn param_spectral_matches_sdp() {
    let (_, s, _) = run(&["param", "spectral", "cycle:5"]);
    let (_, t, _) = run(&["param", "chi-vec", "cycle:5", "--form", "primal"]);
    let spectral = f(&s["parameters"][1]["value"]);
    assert!((spectral - odd_cycle_theta(5.0)).abs() <= 1e-9);
    assert!((spectral - f(&t["parameters"][0]["value"])).abs() <= 1e-4);
    let (code, r, _) = run(&["param", "spectral", "empty:3"]);
    assert_eq!(code, 0);
    assert_eq!(r["parameters"][0]["status"], "not-applicable");
}

#[test]
fn verify_suites() {
    let (code, r, _) = run(&["verify", "hedetniemi", "cycle:5", "complete:3"]);
    assert_eq!(code, 0);
    assert!((f(&r["checks"][0]["lhs"]) - 5f64.sqrt()).abs() <= 1e-3);

    let (code, r, _) = run(&["verify", "products", "cycle:5", "cycle:5"]);
    assert_eq!(code, 0);
    assert!((f(&r["checks"][0]["lhs"]) - 5.0).abs() <= 1e-3);

    let (code, r, _) = run(&["verify", "sabidussi", "complete:3", "complete:4"]);
    assert_eq!(code, 0);
    assert!((f(&r["checks"][0]["lhs"]) - 4.0).abs() <= 1e-3);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let (code, r, _) = run(&["verify", "chain", "petersen"]);
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
}

#[test]
fn verify_errors() {
    let (code, r, _) = run(&["verify", "sabidussi", "petersen", "petersen", "--cap", "50"]);
    assert_eq!(code, 1);
    let err = r["error"].as_str().unwrap();
    assert!(err.contains("100") && err.contains("product"), "{err}");

    let (code, _, _) = run(&["verify", "union", "cycle:5", "path:4"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["verify", "sabidussi", "cycle:5"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["verify", "nonsense", "cycle:5"]);
    assert_eq!(code, 1);
}

#[test]
fn solver_failure_keeps_partial_record() {
    let (code, r, err) = run(&["param", "theta-bar", "cycle:5", "--max-iter", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("MaxIter"));
    assert_eq!(r["parameters"][0]["status"], "max-iter");
    assert!(r["parameters"][0]["upper"].is_number());
}

#[test]
fn graph_file_input_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("k3.txt");
    std::fs::write(&good, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let (code, r, _) = run(&["param", "theta-bar", path_arg(&good)]);
    assert_eq!(code, 0);
    assert!((f(&r["parameters"][0]["value"]) - 3.0).abs() <= 1e-5);
    assert_eq!(r["graphs"][0]["sha256"].as_str().unwrap().len(), 64);

    let bad = dir.path().join("loop.txt");
    std::fs::write(&bad, "2 1\n0 0\n").unwrap();
    let (code, r, _) = run(&["param", "theta-bar", path_arg(&bad)]);
    assert_eq!(code, 3);
    assert!(r["error"].as_str().unwrap().contains("line 2"));

    let (code, _, _) = run(&["param", "theta-bar", "cycle:5", "--tol", "-1"]);
    assert_eq!(code, 1);
}

#[test]
fn generated_certificates_verify_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c5c7.json");
    let (code, _, _) = run(&["generate", "qsabidussi", "cycle:5", "cycle:7", "--out", path_arg(&cert)]);
    assert_eq!(code, 0);
    let (code, r, _) = run(&["qverify", path_arg(&cert), "--check-tol", "1e-7"]);
    assert_eq!(code, 0);
    assert_eq!(r["quantum"]["pass"], true);
    assert_eq!(r["graphs"][0]["n"], 35);

    let c5 = dir.path().join("c5.json");
    run(&["generate", "qcert", "cycle:5", "--out", path_arg(&c5)]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&c5).unwrap()).unwrap();
    let entry = &mut doc["assignment"][3][1][0][0][0];
    *entry = Value::from(entry.as_f64().unwrap() + 0.01);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (code, r, _) = run(&["qverify", path_arg(&bad)]);
    assert_eq!(code, 3);
    assert_eq!(r["quantum"]["witness_vertex"], 3);
    assert!(r["quantum"]["witness_condition"].is_string());

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    let (code, _, _) = run(&["qverify", path_arg(&junk)]);
    assert_eq!(code, 3);

    let mismatch = dir.path().join("mismatch.json");
    std::fs::write(
        &mismatch,
        r#"{"d": 1, "n_colors": 2, "graph": "path:3", "assignment": []}"#,
    )
    .unwrap();
    let (code, r, _) = run(&["qverify", path_arg(&mismatch)]);
    assert_eq!(code, 3);
    assert!(r["error"].as_str().unwrap().contains("assignment"));
}

#[test]
fn coloring_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c5.json");
    let (code, _, _) = run(&[
        "generate",
        "coloring",
        "cycle:5",
        "--lift",
        "3",
        "--out",
        path_arg(&file),
    ]);
    assert_eq!(code, 0);
    let (code, r, _) = run(&["verify", "coloring", "cycle:5", "--coloring", path_arg(&file)]);
    assert_eq!(code, 0);
    assert_eq!(r["coloring"]["pass"], true);
    assert_eq!(f(&r["coloring"]["k"]), 3.0);
    let (code, _, _) = run(&["verify", "coloring", "cycle:7", "--coloring", path_arg(&file)]);
    assert_eq!(code, 3);
}

#[test]
fn records_are_deterministic() {
    let args = ["verify", "sabidussi", "random:5", "random:4", "--seed", "11"];
    let (_, mut a, _) = run(&args);
    let (_, mut b, _) = run(&args);
    a["timestamp"] = Value::Null;
    b["timestamp"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["config"]["seed"], 11);
}

#[test]
fn generate_graph_roundtrips_through_param() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    run(&["generate", "graph", "petersen", "--out", path_arg(&file)]);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("10 15"));
    let (_, r, _) = run(&["param", "spectral", path_arg(&file)]);
    assert!((f(&r["parameters"][1]["value"]) - 2.5).abs() <= 1e-9);
}
