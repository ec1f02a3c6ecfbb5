//! End-to-end tests of the command-line interface: exit-code contract,
//! fixture loading, negative controls, and report stability.

use std::path::Path;
use std::process::{Command, Output};

fn gibbslie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gibbslie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn validate_fixtures() {
    let out = gibbslie(&["algebra", "validate", "--algebra", "h3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["results"]["jacobi_ok"], true);
    assert_eq!(v["results"]["algebra"]["dim"], 3);

    let out = gibbslie(&["algebra", "validate", "--algebra", "bad_jacobi"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stderr_json(&out);
    assert!(v["results"]["error"]
        .as_str()
        .unwrap()
        .contains("Jacobi identity fails at basis triple (0, 1, 2)"));

    // An empty file is a parse error.
    let dir = std::env::temp_dir().join("gibbslie-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.toml");
    std::fs::write(&empty, "").unwrap();
    let out = gibbslie(&["algebra", "validate", "--algebra", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_env_override() {
    let dir = std::env::temp_dir().join("gibbslie-fixture-override");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("tiny.toml"),
        "dim = 1\nbasis = [\"a\"]\nconstants = []\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_gibbslie"))
        .env("GIBBSLIE_FIXTURES", &dir)
        .args(["algebra", "validate", "--algebra", "tiny"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["results"]["algebra"]["dim"], 1);
}

#[test]
fn gibbs_element_verdicts_and_codes() {
    // su2: compact branch, exit 0.
    let out = gibbslie(&["gibbs-element", "--algebra", "su2", "--element", "x1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["results"]["verdict"], true);
    assert_eq!(
        v["results"]["witness"]["branch"],
        "compact_algebra_invariant_ball"
    );

    // h3: negative verdict, exit 1, failing stage named.
    let out = gibbslie(&["gibbs-element", "--algebra", "h3", "--element", "p"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["results"]["verdict"], false);
    assert_eq!(v["results"]["failed_stage"], "comp_interior_member");

    // sl2 elliptic element without a hint: needs conjugation, input error.
    let out = gibbslie(&["gibbs-element", "--algebra", "sl2", "--element", "e-f"]);
    assert_eq!(out.status.code(), Some(2));

    // With the hint it succeeds.
    let out = gibbslie(&[
        "gibbs-element",
        "--algebra",
        "sl2",
        "--element",
        "e-f",
        "--cartan-hint",
        "e-f",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pipeline_on_bundled_examples() {
    let out = gibbslie(&[
        "pipeline",
        "--algebra",
        "hsp2",
        "--cartan",
        "z,p2+q2",
        "--element",
        "z+p2+q2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["results"]["decision"]["verdict"], true);
    assert_eq!(
        v["results"]["decision"]["witness"]["branch"],
        "admissible_quotient"
    );
    // Exactly two positive systems, both admissible.
    let stages = v["results"]["stages"].as_array().unwrap();
    let enumeration = stages
        .iter()
        .find(|s| s["stage"] == "enumerate_positive_systems")
        .unwrap();
    assert_eq!(enumeration["count"], 2);
    for s in enumeration["systems"].as_array().unwrap() {
        assert_eq!(s["admissible"], true);
    }
}

#[test]
fn kms_suite_codes() {
    let out = gibbslie(&["kms", "--family", "su2", "--j", "1/2", "--beta", "1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["results"]["reflection_residual"].as_f64().unwrap() <= 1e-9);
    assert!(v["results"]["mixture"]["reflection_residual"].as_f64().unwrap() <= 1e-9);

    let out = gibbslie(&["kms", "--family", "su2", "--j", "1/2", "--beta", "1.5", "--perturb"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["results"]["reflection_residual"].as_f64().unwrap() > 1e-3);

    // Guarded domain: oscillator with beta * lambda <= 0 refuses cleanly.
    let out = gibbslie(&["kms", "--family", "oscillator", "--lambda", "-1", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stderr_json(&out);
    assert!(v["results"]["error"].as_str().unwrap().contains("trace-class refusal"));
}

#[test]
fn reports_are_stable_modulo_wall_time() {
    let args = [
        "gibbs-element",
        "--algebra",
        "hsp2",
        "--element",
        "z+p2+q2",
        "--cartan-hint",
        "z,p2+q2",
        "--seed",
        "42",
    ];
    let strip = |out: &Output| {
        let mut v = stdout_json(out);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    let a = gibbslie(&args);
    let b = gibbslie(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn json_out_writes_file() {
    let dir = std::env::temp_dir().join("gibbslie-json-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = gibbslie(&[
        "spectral",
        "elliptic",
        "--algebra",
        "sl2",
        "--element",
        "e-f",
        "--json-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&path).is_file());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["verdict"], true);
}

#[test]
fn trace_families() {
    let out = gibbslie(&[
        "trace", "--family", "sl2", "--lambda", "-3", "--x-theta", "0.7", "--depth", "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let got = v["results"]["value"][0].as_f64().unwrap();
    let closed = v["results"]["closed_form"][0].as_f64().unwrap();
    assert!((got - closed).abs() < 1e-10);

    // Boundary element: divergent, exit 1.
    let out = gibbslie(&[
        "trace", "--family", "sl2", "--lambda", "-3", "--x-theta", "0", "--depth", "50",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = gibbslie(&["trace", "--family", "oscillator", "--lambda", "1", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let out = gibbslie(&["trace", "--family", "nope", "--x-theta", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn roots_and_cones_reports() {
    let out = gibbslie(&["roots", "--algebra", "sl2", "--cartan", "e-f"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["results"]["roots"].as_array().unwrap().len(), 2);

    // A non-Cartan is rejected as input error.
    let out = gibbslie(&["roots", "--algebra", "sl2", "--cartan", "h"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gibbslie(&["cones", "--algebra", "hsp2", "--cartan", "z,p2+q2", "--x0", "z+p2+q2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let sys = &v["results"]["systems"][0];
    assert_eq!(sys["admissible"], true);
    assert_eq!(sys["c_min_pointed"], true);
    assert_eq!(sys["c_min_in_c_max"], true);
}
