use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Run {
    code: i32,
    json: Value,
    stderr: String,
}

fn lcplab(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_lcplab")).args(args).output().expect("spawn lcplab");
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().expect("exit code"),
        json: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn classify_certifies_p() {
    let r = lcplab(&["classify", &path("p_hidden_z.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["schema"], "lcplab/1");
    assert_eq!(r.json["algorithm"]["verdict"], "PCertified");
    assert_eq!(r.json["classes"]["p"], true);
    assert_eq!(r.json["hidden_z"]["status"], "found");
}

#[test]
fn classify_is_inconclusive_without_p0() {
    let r = lcplab(&["classify", &path("not_p0_hidden_z.json"), "--classes", "p0,z"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["algorithm"]["verdict"], "Inconclusive");
    assert_eq!(r.json["classes"]["p0"], false);
    assert!(r.json["classes"].get("s").is_none());
}

#[test]
fn classify_step_two_with_zero_epsilon() {
    let r = lcplab(&["classify", &path("p_hidden_z.json"), "--eps", "0", "--delta", "1/2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["algorithm"]["verdict"], "P0Certified");
    assert_eq!(r.json["algorithm"]["delta"], "1/2");
}

#[test]
fn solve_each_method() {
    for method in ["lemke", "crisscross", "lp", "enumerate"] {
        let r = lcplab(&["solve", &path("p_hidden_z.json"), "--method", method]);
        assert_eq!(r.code, 0, "{method}: {}", r.stderr);
        assert_eq!(r.json["status"], "Solved");
        assert_eq!(r.json["z"], serde_json::json!(["0", "1", "1"]), "{method}");
    }
}

#[test]
fn solve_cross_check_agrees() {
    let r = lcplab(&["solve", &path("p_hidden_z.json"), "--cross-check"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["agree"], true);
    assert_eq!(r.json["results"].as_array().unwrap().len(), 4);
}

#[test]
fn infeasible_instance_is_negative() {
    let r = lcplab(&["solve", &path("infeasible.json")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["feasible_set_empty"], true);
    let r = lcplab(&["solve", &path("infeasible.json"), "--method", "crisscross"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["status"], "Infeasible");
}

#[test]
fn solve_needs_q() {
    let r = lcplab(&["solve", &path("singular_ones.json")]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("\"q\""), "{}", r.stderr);
}

#[test]
fn hidden_verify_exact_decimals() {
    let r = lcplab(&["hidden", "verify", &path("singular_hidden_z.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["valid"], true);
    assert_eq!(r.json["combination"], serde_json::json!(["16/5", "3/10", "63/10"]));
}

#[test]
fn hidden_verify_without_certificate_is_usage_error() {
    let r = lcplab(&["hidden", "verify", &path("identity3.json")]);
    assert_eq!(r.code, 3);
}

#[test]
fn hidden_find_unknown() {
    let r = lcplab(&["hidden", "find", &path("singular_ones.json")]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["status"], "unknown");
    let r = lcplab(&["hidden", "find", &path("not_p0_hidden_z.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["status"], "found");
}

#[test]
fn hidden_perturb_respects_bound() {
    let r = lcplab(&["hidden", "perturb", "1/4", &path("p_hidden_z.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["bound_l"], "1/2");
    assert_eq!(r.json["a_eps"]["rows"][0][0], "5/4");
    let r = lcplab(&["hidden", "perturb", "1/2", &path("p_hidden_z.json")]);
    assert_eq!(r.code, 3);
}

#[test]
fn hidden_submatrix_reports_gate() {
    let r = lcplab(&["hidden", "submatrix", "1,3", &path("p_hidden_z.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["alpha"], serde_json::json!([1, 3]));
    assert_eq!(r.json["submatrix"]["rows"], serde_json::json!([["1", "0"], ["-1", "1"]]));
    let r = lcplab(&["hidden", "submatrix", "1", &path("singular_hidden_z.json")]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["status"], "inapplicable");
    let r = lcplab(&["hidden", "submatrix", "4", &path("p_hidden_z.json")]);
    assert_eq!(r.code, 3);
}

#[test]
fn suite_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let r = lcplab(&["suite", "T3.1", "--trials", "10", "--seed", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["theorem_id"], "T3.1");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, r.json);
}

#[test]
fn suite_unknown_id_lists_registered() {
    let r = lcplab(&["suite", "T9.9"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("T3.10") && r.stderr.contains("cone-homogeneous"), "{}", r.stderr);
}

#[test]
fn malformed_input_names_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"rows\": [[1, 2],\n [3, \"x\"]]}").unwrap();
    let r = lcplab(&["classify", bad.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("$.rows[1][1]"), "{}", r.stderr);
    std::fs::write(&bad, "{\"rows\": [[1,\n 2]").unwrap();
    let r = lcplab(&["classify", bad.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(lcplab(&["frobnicate"]).code, 3);
    assert_eq!(lcplab(&["solve"]).code, 3);
    assert_eq!(lcplab(&["solve", &path("p_hidden_z.json"), "--method", "simplex"]).code, 3);
    assert_eq!(lcplab(&["--help"]).code, 0);
    assert_eq!(lcplab(&["--version"]).code, 0);
}

#[test]
fn reports_are_deterministic() {
    let a = lcplab(&["classify", &path("singular_hidden_z.json")]);
    let b = lcplab(&["classify", &path("singular_hidden_z.json")]);
    assert_eq!(a.json, b.json);
    assert!([0, 1, 2, 3].contains(&a.code));
}
