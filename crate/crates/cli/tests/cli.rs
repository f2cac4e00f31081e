//! End-to-end runs of the binary against the corpus inputs.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("corpus");
    p.push(name);
    p.to_str().expect("utf-8 path").to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubestar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn star_holds_on_the_full_direct_product_ball() {
    let out = run(&["verify", "star", &corpus("z2z2_direct.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["command"], "verify star");
    assert_eq!(v["holds"], true);
    assert_eq!(v["report"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["report"]["interior_cubes"], 25);
}

#[test]
fn star_flags_the_strip_action() {
    let out = run(&["verify", "star", &corpus("strip_violation.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["holds"], false);
    let violations = v["report"]["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 14);
    for viol in violations {
        assert_eq!(viol["cube"], serde_json::json!([2, 3, 4, 5]));
    }
}

#[test]
fn ladder_regression_stays_clean() {
    let out = run(&["verify", "star", &corpus("ladder_action.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["holds"], true);
}

#[test]
fn coxeter_check_reports_the_affine_triangle() {
    let out = run(&["coxeter", "check", &corpus("coxeter_triangle_333.json")]);
    assert_eq!(out.status.code(), Some(0), "analysis outcomes are not failures");
    let v = json_of(&out);
    assert_eq!(v["report"]["fc"], false);
    assert_eq!(v["report"]["fc_witness"], "{a,b,c}");
    assert_eq!(v["report"]["whole_set_spherical"], false);
}

#[test]
fn davis_build_emits_dot_and_json() {
    let input = corpus("z2z2_direct.json");
    let dot = run(&["davis", "build", &input, "--format", "dot"]);
    assert_eq!(dot.status.code(), Some(0));
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph complex {"));

    let out = run(&["davis", "build", &input]);
    let v = json_of(&out);
    assert_eq!(v["report"]["complex"]["vertices"], 9);
    assert_eq!(v["report"]["cube_data"].as_array().unwrap().len(), 25);
    assert_eq!(v["report"]["flag_violations"].as_array().unwrap().len(), 0);
    assert!(v["report"]["vertex_labels"]
        .as_array()
        .unwrap()
        .iter()
        .any(|l| l == "1 : {a,b}"));
}

#[test]
fn heights_report_carries_both_posets() {
    let out = run(&["verify", "heights", &corpus("z2z2_direct.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["report"]["stabiliser_poset"]["height"], 3);
    assert_eq!(v["report"]["stabiliser_poset"]["bound"], 3);
    assert_eq!(v["report"]["fixed_set_poset"]["height"], 3);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["verify", "heights", &corpus("z2z2_direct.json")],
        vec!["deligne", "formal-star", &corpus("coxeter_free2.json")],
        vec!["davis", "build", &corpus("path3_z2.json")],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "two runs of {args:?} differ");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn quiet_prints_one_verdict_line() {
    let out = run(&["verify", "star", &corpus("z2z2_direct.json"), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("holds"));
}

#[test]
fn output_flag_writes_the_report_file() {
    let path = std::env::temp_dir().join(format!("cubestar-report-{}.json", std::process::id()));
    let out = run(&[
        "verify",
        "star",
        &corpus("z2z2_direct.json"),
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["holds"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn deligne_pipeline_runs_clean_on_free_and_fc_systems() {
    let out = run(&["deligne", "domain", &corpus("coxeter_fc_mixed.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["report"]["standard_height"], 3);
    assert_eq!(v["report"]["height_bound"], 3);

    let out = run(&["deligne", "free-ball", &corpus("coxeter_free2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["report"]["tree"], true);
    assert_eq!(v["report"]["complex"]["vertices"], 107);

    let out = run(&["deligne", "formal-star", &corpus("coxeter_free3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["holds"], true);
}

#[test]
fn usage_errors_exit_with_code_two() {
    let out = run(&["verify", "star", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = std::env::temp_dir().join(format!("cubestar-bad-{}.json", std::process::id()));
    std::fs::write(&bad, "{\"foo\": 1}").unwrap();
    let out = run(&["verify", "star", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&bad).ok();

    let out = run(&["verify", "star", &corpus("z2z2_direct.json"), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2), "no graph output for verify");

    let out = run(&["deligne", "domain", &corpus("coxeter_triangle_333.json")]);
    assert_eq!(out.status.code(), Some(2), "non-FC input is rejected");
    assert!(String::from_utf8(out.stderr).unwrap().contains("{a,b,c}"));
}

#[test]
fn resource_caps_exit_with_code_three() {
    let out = run(&[
        "davis",
        "build",
        &corpus("z2z2_free.json"),
        "--cap-vertices",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&[
        "deligne",
        "free-ball",
        &corpus("coxeter_free3.json"),
        "--radius",
        "9",
        "--cap-vertices",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
