use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use toric_brauer::io::{read_fan, write_fan};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-brauer")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (serde_json::from_str(&stdout(&o)).expect("valid JSON report"), o.status.code().unwrap())
}

#[test]
fn validate_blowup_a3() {
    let (r, code) = json(&["validate", &fixture("blowup_a3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["valid"], true);
    for axiom in ["well_formed", "strongly_convex", "distinct_cones", "intersection_is_face"] {
        assert_eq!(r["result"]["axioms"][axiom]["pass"], true, "{axiom}");
    }
    assert_eq!(r["fan"]["maximal"], 3);
}

#[test]
fn validate_names_overlapping_pair() {
    let (r, code) = json(&["validate", &fixture("overlap.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["valid"], false);
    let axiom = &r["result"]["axioms"]["intersection_is_face"];
    assert_eq!(axiom["pass"], false);
    assert_eq!(axiom["pairs"], serde_json::json!([[0, 1]]));
    let text = stdout(&run(&["validate", &fixture("overlap.json")]));
    assert!(text.contains("pairs: [[0, 1]]"), "{text}");
}

#[test]
fn validate_torus_is_valid() {
    let o = run(&["validate", &fixture("torus2.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_3() {
    for name in ["truncated.json", "unknown_field.json", "missing.json"] {
        let o = run(&["invariants", &fixture(name)]);
        assert_eq!(o.status.code(), Some(3), "{name}");
        assert!(o.stdout.is_empty());
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = run(&["validate", &fixture("truncated.json")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["validate", &fixture("unknown_field.json")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("name"));
}

#[test]
fn invalid_fan_exits_2() {
    let o = run(&["brauer", &fixture("overlap.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid fan"));
}

#[test]
fn invariants_reports() {
    let (r, _) = json(&["invariants", &fixture("blowup_a3.json")]);
    let res = &r["result"];
    assert_eq!(res["pic"], "Z");
    assert_eq!(res["cl"], "Z");
    assert_eq!(res["sf_rank"], 4);
    assert_eq!(res["u_rank"], 0);
    assert_eq!(res["nu"], serde_json::json!([1, 1, 1]));

    let (r, _) = json(&["invariants", &fixture("quadric.json")]);
    assert_eq!(r["result"]["pic"], "0");
    assert_eq!(r["result"]["cl"], "Z/2");
    assert_eq!(r["result"]["singular_cones"][0]["multiplicity"], 2);

    let (r, _) = json(&["invariants", &fixture("torus2.json")]);
    assert_eq!(r["result"]["pic"], "0");
    assert_eq!(r["result"]["cl"], "0");
    assert_eq!(r["result"]["u_rank"], 2);
}

#[test]
fn brauer_reports() {
    let (r, _) = json(&["brauer", &fixture("blowup_a3.json")]);
    assert_eq!(r["result"]["total"], "0");
    let (r, _) = json(&["brauer", &fixture("quadric.json")]);
    assert_eq!(r["result"]["total"], "0");
    let text = stdout(&run(&["brauer", &fixture("torus2.json")]));
    assert!(text.contains("Q/Z (symbol (m1,m2))"), "{text}");
    let (r, _) = json(&["brauer", &fixture("two_rays.json")]);
    assert_eq!(r["result"]["nu"], serde_json::json!([1, 2]));
    // Pair (1,2) contributes a group of order ν₁ = 1, which is omitted.
    assert_eq!(r["result"]["smooth_part"], serde_json::json!([]));
}

#[test]
fn brauer_emits_cocycles() {
    let (r, code) = json(&["brauer", "--emit-cocycles", &fixture("cube.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["split_part"], "Z^2");
    let cocycles = r["result"]["cocycles"].as_array().unwrap();
    assert_eq!(cocycles.len(), 2);
    assert_eq!(r["result"]["maximal_cones"].as_array().unwrap().len(), 6);
    for c in cocycles {
        // 6 choose 3 triples, each exponent in M = Z^3.
        let exps = c["exponents"].as_array().unwrap();
        assert_eq!(exps.len(), 20);
        assert!(exps.iter().all(|e| e["m"].as_array().unwrap().len() == 3));
    }
    let (r, _) = json(&["brauer", &fixture("cube.json")]);
    assert!(r["result"].get("cocycles").is_none());
}

#[test]
fn resolve_quadric_adds_diagonal() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("quadric_resolved.json");
    let out_s = out.display().to_string();
    let (r, code) = json(&["resolve", &fixture("quadric.json"), "--output", &out_s]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["added_rays"], serde_json::json!([[1, 1]]));
    assert_eq!(r["result"]["certificate"]["valid"], true);
    let written = read_fan(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(written.is_smooth());
    assert_eq!(written.maximal().len(), 2);
}

#[test]
fn resolve_smooth_input_is_normalised_copy() {
    for name in ["p2.json", "blowup_a3.json"] {
        let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("resolved_{name}"));
        let (r, code) = json(&["resolve", &fixture(name), "-o", &out.display().to_string()]);
        assert_eq!(code, 0);
        assert_eq!(r["result"]["added_rays"], serde_json::json!([]));
        let input = read_fan(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(std::fs::read_to_string(&out).unwrap(), write_fan(&input));
    }
}

#[test]
fn resolve_write_failure_exits_4() {
    let o = run(&["resolve", &fixture("quadric.json"), "--output", "/nonexistent-dir/out.json"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
}

#[test]
fn cech_queries() {
    let ex = fixture("blowup_a3.json");
    let (r, _) = json(&["cech", &ex, "--sheaf", "sf", "--degree", "1"]);
    assert_eq!(r["result"]["group"], "0");
    assert_eq!(r["result"]["cochain_ranks"]["C^1"], 6);
    let (r, _) = json(&["cech", &ex, "--sheaf", "sf", "--degree", "0"]);
    assert_eq!(r["result"]["group"], "Z^4");
    for name in ["blowup_a3.json", "cube.json", "quadric.json", "two_rays.json"] {
        let (r, _) = json(&["cech", &fixture(name), "--sheaf", "w", "--degree", "1"]);
        assert_eq!(r["result"]["group"], "0", "{name}");
    }
    let (r, _) = json(&["cech", &fixture("cube.json"), "--sheaf", "U", "--degree", "3"]);
    assert_eq!(r["result"]["group"], "Z/2");
    let (r, _) = json(&["cech", &ex, "--sheaf", "u", "--degree", "7"]);
    assert_eq!(r["result"]["group"], "0");
}

#[test]
fn unknown_sheaf_is_a_usage_error() {
    let o = run(&["cech", &fixture("blowup_a3.json"), "--sheaf", "o", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown sheaf"));
}

/// Every scalar in the JSON result appears verbatim in the text report.
#[test]
fn text_and_json_agree() {
    let cases: [&[&str]; 5] = [
        &["invariants", "blowup_a3.json"],
        &["brauer", "two_rays.json"],
        &["resolve", "quadric.json"],
        &["cech", "cube.json", "--sheaf", "sf", "--degree", "2"],
        &["validate", "overlap.json"],
    ];
    for case in cases {
        let mut args: Vec<String> = case.iter().map(|s| s.to_string()).collect();
        args[1] = fixture(case[1]);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = stdout(&run(&args));
        let (r, _) = json(&args);
        let mut stack = vec![r["result"].clone()];
        while let Some(v) = stack.pop() {
            let Value::Object(m) = v else { continue };
            for (k, x) in m {
                match &x {
                    Value::String(s) => assert!(text.contains(&format!("{k}: {s}")), "{k}: {s} in\n{text}"),
                    Value::Number(n) => assert!(text.contains(&format!("{k}: {n}")), "{k}: {n} in\n{text}"),
                    Value::Bool(b) => assert!(text.contains(&format!("{k}: {b}")), "{k}: {b} in\n{text}"),
                    Value::Object(_) => stack.push(x.clone()),
                    Value::Array(items) => stack.extend(items.iter().cloned()),
                    Value::Null => {}
                }
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    for fmt in ["text", "json"] {
        let args = ["--format", fmt, "brauer", "--emit-cocycles", &fixture("blowup_a3.json")];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
    let with_timing = stdout(&run(&["--timing", "invariants", &fixture("quadric.json")]));
    assert!(with_timing.contains("timing: "));
    assert!(!stdout(&run(&["invariants", &fixture("quadric.json")])).contains("timing"));
}
