use std::path::PathBuf;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dompoly").chain(args.iter().copied());
    let code = dompoly::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out:?} / {err:?}"));
    (code, v)
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect()
}

#[test]
fn cycle_six() {
    let (code, v) = run_json(&["cycle", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 6);
    assert_eq!(strings(&v["coefficients"]), ["0", "0", "3", "14", "15", "6", "1"]);
    assert_eq!(v["alpha"], "-1");
    assert_eq!(v["beta"], "0");
    assert_eq!(v["theta"], "12");
    assert_eq!(v["a"], "135");
    assert_eq!(v["b"], "15");
}

#[test]
fn search_partitions_six() {
    let (code, v) = run_json(&["search-partitions", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["matches"], 1);
    let parts = v["partitions"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0]["parts"], serde_json::json!([6]));
    assert_eq!(parts[0]["matches"], true);
    assert_eq!(parts[1]["parts"], serde_json::json!([3, 3]));
    assert_eq!(parts[1]["matches"], false);
}

#[test]
fn poly_of_family_and_file() {
    let (code, v) = run_json(&["poly", "--family", "path:3"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["coefficients"]), ["0", "1", "3", "1"]);

    let (code, out, _) = run(&["--format", "table", "poly", "--family", "cycle:5"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^5 + 5x^4 + 10x^3 + 5x^2"), "{out}");

    // every order-3 graph, one line each
    let (code, out, _) = run(&["--format", "table", "poly", data("graphs3.g6").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn eval_and_gamma() {
    let (code, v) = run_json(&["eval", "-1", "--derivative", "2", "--family", "cycle:8"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "8");

    let (code, v) = run_json(&["gamma", "--family", "cycle:7"]);
    assert_eq!(code, 0);
    assert_eq!(v["gamma"], 3);
}

#[test]
fn verify_single_check() {
    let (code, v) = run_json(&["verify", "L5-alpha", "--max-n", "200"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["range"]["to"], 200);
}

#[test]
fn verify_corpus_check_with_directory() {
    let dir = data("");
    let (code, v) = run_json(&[
        "verify",
        "COR-wheel",
        "--max-n",
        "6",
        "--corpus-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["verify", "no-such-check"]);
    assert_eq!(code, 2);
    assert!(err.contains("no-such-check"), "{err}");

    let (code, _, _) = run(&["poly"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn guard_is_enforced() {
    let (code, _, err) = run(&["poly", "--family", "cycle:30"]);
    assert_ne!(code, 0);
    assert!(err.contains("--guard-override"), "{err}");
    let (code, _, _) = run(&["--guard-override", "30", "gamma", "--family", "cycle:12"]);
    assert_eq!(code, 0);
}

#[test]
fn bad_records_exit_three() {
    let path = std::env::temp_dir().join(format!("dompoly-bad-{}.g6", std::process::id()));
    std::fs::write(&path, "C~\n!!bad\n").unwrap();
    let (code, out, err) = run(&["classify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 3);
    assert!(err.contains(":2:"), "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["errors"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["class_size"], 1);
}

#[test]
fn classify_order_four() {
    let (code, v) = run_json(&["classify", data("graphs4.g6").to_str().unwrap()]);
    assert_eq!(code, 0);
    let classes = v["classes"].as_array().unwrap();
    let total: u64 = classes.iter().map(|c| c["class_size"].as_u64().unwrap()).sum();
    assert_eq!(total, 11);
    let sizes: Vec<u64> = classes.iter().map(|c| c["class_size"].as_u64().unwrap()).collect();
    assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn path_class_and_wheel() {
    let (code, v) = run_json(&["path-class", "6", data("graphs6.g6").to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "pass");

    let (code, v) = run_json(&["wheel", "5", data("graphs5.g6").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
}
