use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", rel].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_bundled_parameter() {
    let v = json_ok(&["validate", &data("params/h25.json")]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["classes"], serde_json::json!(["2111", "5"]));
    assert_eq!(v["nu"], serde_json::json!([4, 1]));
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn disallowed_nu_exits_with_input_error() {
    let dir = tempdir();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"group": "S5", "classes": [{"order": 2, "cycle_type": [2, 1, 1, 1]}, {"order": 5, "cycle_type": [5]}], "nu": [3, 1]}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nu not allowed"));
}

#[test]
fn malformed_file_reports_pointer() {
    let dir = tempdir();
    let path = dir.join("broken.json");
    std::fs::write(&path, r#"{"group": "S5", "classes": ["(1 2)"], "nu": ["four"]}"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("#/nu/0"), "{err}");
}

#[test]
fn non_central_cover_is_rejected() {
    let dir = tempdir();
    let path = dir.join("cover.json");
    // S3 → C2 by sign: kernel A3 is not central.
    std::fs::write(
        &path,
        r#"{"base_group": "S2", "cover_generators": ["(1 2)", "(1 2 3)"], "image_generators": ["(1 2)", "()"]}"#,
    )
    .unwrap();
    let out = run(&["classify", &data("groups/S5.json"), path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kernel not central"));
}

#[test]
fn monodromy_of_degree_25_cover() {
    let v = json_ok(&["monodromy", &data("params/h25.json")]);
    assert_eq!(v["fiber_size"], 25);
    assert_eq!(v["quasi_full"], true);
    assert_eq!(v["truncated"], false);
    assert_eq!(v["group_order"], "15511210043330985984000000");
}

#[test]
fn classify_s6() {
    let v = json_ok(&["classify", &data("groups/S6.json"), &data("covers/2S6.json")]);
    let classes = v["classes"].as_array().unwrap();
    let mixed: Vec<&str> = classes
        .iter()
        .filter(|c| c["kind"] == "mixed")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(mixed, vec!["42"]);
    for c in classes {
        assert_eq!(c["kind"], c["partition_rule"], "{c}");
    }
}

#[test]
fn condition_e_routes_agree() {
    let v = json_ok(&["condition-e", &data("covers/2S6.json"), "42", "33"]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["routes_agree"], true);
    assert!(v["witness"].is_object());
    let v = json_ok(&["condition-e", &data("covers/2S6.json"), "42", "(1 2)"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn budget_exhaustion_is_flagged() {
    let out = run(&["fiber", "--budget-tuples", "100", &data("params/h125.json")]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["truncated"], true);
    assert_eq!(v["budget"]["prefix_visits"], "42110");
}

#[test]
fn conway_parker_needs_cover() {
    let out = run(&["conway-parker", &data("params/a5c3n5.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_ok(&["conway-parker", "--cover", &data("covers/SL25.json"), &data("params/a5c3n5.json")]);
    assert_eq!(v["report"]["bijective"], true);
    assert_eq!(v["report"]["orbit_count"], 2);
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let param = data("params/a5c3n5.json");
    let cover = data("covers/SL25.json");
    let one = run(&["orbits", "--threads", "1", "--cover", &cover, &param]);
    let four = run(&["orbits", "--threads", "4", "--cover", &cover, &param]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let one = run(&["goursat", "--threads", "1", &data("params/h25.json")]);
    let three = run(&["goursat", "--threads", "3", &data("params/h25.json")]);
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempdir();
    let path = dir.join("report.json");
    let out = run(&["mass", "--out", path.to_str().unwrap(), &data("params/h25.json")]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let ratio = v["report"]["ratio_aut"].as_f64().unwrap();
    assert!((ratio - 4.0 / 3.0).abs() < 1e-9);
}

#[test]
fn derived_fixtures_match_bundled_data() {
    let dir = tempdir();
    let v = json_ok(&["derive-fixtures", dir.to_str().unwrap()]);
    for f in v["written"].as_array().unwrap() {
        let rel = f.as_str().unwrap();
        let fresh = std::fs::read(dir.join(rel)).unwrap();
        let bundled = std::fs::read(data(rel)).unwrap();
        assert_eq!(fresh, bundled, "{rel}");
    }
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "hurwitz-cli-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::SeqCst)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
