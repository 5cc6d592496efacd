use std::process::{Command, Output};

use serde_json::Value;

fn picard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picard")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cusp_torsion_has_five_elements() {
    let out = picard(&["cusp", "torsion"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 5);
    let names: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e["normal_form"].as_str().unwrap()).collect();
    assert!(names.contains(&"R"));
    assert!(v["elements"].as_array().unwrap().iter().all(|e| e["order"] == 2));
}

#[test]
fn reduce_point_already_in_omega() {
    let v = json(&picard(&["ford", "reduce", "--point", "[-1,0,1]"]));
    assert_eq!(v["identity"], true);
    assert_eq!(v["point"], serde_json::json!(["1", "0", "-1"]));
}

#[test]
fn reduce_moves_a_far_point() {
    let v = json(&picard(&["ford", "reduce", "--point", "[\"-1/10\",\"1/3\",\"1\"]"]));
    assert_eq!(v["identity"], false);
    assert!(v["cusp_normal_form"].is_null());
    let spheres = v["omega"]["spheres"].as_array().unwrap();
    assert!(spheres.iter().all(|s| s[1] != "Interior"));
}

#[test]
fn bad_input_exits_with_two() {
    let out = picard(&["ford", "reduce", "--point", "[1,0,1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "invalid");
    let out = picard(&["ford", "reduce", "--point", "[1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "parse");
}

#[test]
fn iteration_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_picard"))
        .args(["ford", "reduce", "--point", "[\"-1/10\",\"1/3\",\"1\"]"])
        .env("PICARD_MAX_REDUCE_ITERS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "cap");
}

#[test]
fn mirror_search_norm_two() {
    let v = json(&picard(&["mirror", "search", "--norm", "2", "--height", "2"]));
    assert_eq!(v["mirror"], "L");
    assert!(v["count"].as_u64().unwrap() > 0);
}

#[test]
fn congruence_certificate() {
    let v = json(&picard(&["congruence", "check", "--ideal", "isqrt7"]));
    assert_eq!(v["order"], 336);
    assert_eq!(v["torsion_free"], true);
    let v = json(&picard(&["congruence", "check", "--ideal", "tau"]));
    assert_eq!(v["order"], 168);
    assert_eq!(v["torsion_free"], false);
}

#[test]
fn output_is_deterministic() {
    let a = picard(&["cusp", "overlaps"]);
    let b = picard(&["cusp", "overlaps"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
