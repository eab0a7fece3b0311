use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn nqh(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_nqh")).args(args).output().expect("run nqh");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).unwrap(), stderr: String::from_utf8(out.stderr).unwrap() }
}

#[test]
fn reproduce_plus_example_reports_isolated_singularity() {
    let r = nqh(&["reproduce", "ex-4.10"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("isolated singularity: yes"));
    assert!(r.stdout.contains("blocks: k,k,k,k \u{d7}2 components"));
}

#[test]
fn reproduce_class_r_reports_nilpotent_witness() {
    let r = nqh(&["reproduce", "prop-5.10"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("nilpotent witness: (1 - x1*x2*, 0)"));
    assert!(r.stdout.contains("isolated singularity: no"));
}

#[test]
fn missing_file_is_an_input_error() {
    let r = nqh(&["clifford", "missing.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("missing.json"));
}

#[test]
fn malformed_inputs_are_input_errors() {
    assert_eq!(nqh(&["check-presentation", &fixture("bad_scalar.json")]).code, 2);
    assert_eq!(nqh(&["check-presentation", "--max-degree", "9", &fixture("skew_plane.json")]).code, 2);
    assert_eq!(nqh(&["reproduce", "no-such-scenario"]).code, 2);
    assert_eq!(nqh(&["frobnicate"]).code, 2);
}

#[test]
fn failed_mathematical_checks_exit_one() {
    assert_eq!(nqh(&["clifford", &fixture("not_central.json")]).code, 1);
    let r = nqh(&["verify-twist", &fixture("twist_broken.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("first counterexample"));
    assert_eq!(nqh(&["knorrer", &fixture("ex_minus.json"), "--case", "plus"]).code, 1);
}

#[test]
fn corrupted_expectation_fails_naming_the_scenario() {
    let r = nqh(&["reproduce", "all", "--registry", &fixture("corrupted_registry.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("FAILED ex-4.10"), "{}", r.stderr);
    assert!(r.stderr.contains("isolated singularity"));
}

#[test]
fn empty_registry_warns_and_succeeds() {
    let r = nqh(&["reproduce", "all", "--registry", &fixture("empty_registry.json")]);
    assert_eq!(r.code, 0);
    assert!(r.stderr.contains("warning"));
}

#[test]
fn reproduce_all_is_byte_deterministic_and_parallel_safe() {
    let a = nqh(&["reproduce", "all"]);
    let b = nqh(&["reproduce", "all"]);
    let c = nqh(&["reproduce", "all", "--jobs", "4"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(a.stdout.contains("scenarios: 7, passed: 7, failed: 0"));
}

#[test]
fn json_output_is_structured_with_stable_keys() {
    let r = nqh(&["--json", "reproduce", "ex-5.9"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["subject"], "ex-5.9");
    assert_eq!(v["fields"]["description"], "D^b(k)^{\u{d7}5}");
    assert_eq!(v["passed"], true);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "subject", "fields", "checks", "notes", "passed"]);
    let sources: Vec<&str> = v["checks"].as_array().unwrap().iter().filter_map(|c| c["source"].as_str()).collect();
    assert!(!sources.is_empty() && sources.iter().all(|s| ["published", "derived", "invariant"].contains(s)));
}

#[test]
fn presentation_commands() {
    let r = nqh(&["check-presentation", &fixture("skew_plane.json")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("hilbert series up to degree 4: 1,2,3,4,5"));
    let r = nqh(&["koszul-dual", "--max-degree", "3", &fixture("skew_plane.json")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("hilbert series up to degree 3: 1,2,1,0"));
}

#[test]
fn clifford_summaries() {
    let r = nqh(&["clifford", "--dump-rules", &fixture("skew_plane.json")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("dim: 4\n"));
    assert!(r.stdout.contains("radical dim: 0"));
    assert!(r.stdout.contains("x1*x1* -> 1"));
    let r = nqh(&["clifford", &fixture("ex_plus.json")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("dim: 16\n"));
}

#[test]
fn double_ore_and_twist_files() {
    let r = nqh(&["double-ore", &fixture("ex_plus.json")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("[pass] z + y1^2 + y2^2 is central"));
    let r = nqh(&["verify-twist", &fixture("twist_parity.json")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("[pass] rebase isomorphism"));
}

#[test]
fn knorrer_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let r = nqh(&["knorrer", &fixture("ex_minus.json"), "--report", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, r.stdout);
    for key in ["zhang dim: 8", "zhang radical dim: 0", "oracle iso: isomorphism", "isolated singularity: yes", "description: D^b(k)^{\u{d7}5}"] {
        assert!(written.contains(key), "missing {key}");
    }
}
