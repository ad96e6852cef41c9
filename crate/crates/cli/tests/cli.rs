use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grouphom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouphom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn sigma5_text_report() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = grouphom(&["fixtures", "sigma5"]);
    let path = write(dir.path(), "sigma5.pres", &stdout(&fixture));
    let o = grouphom(&["h2", &path, "-p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("d = 2 (exact: rewriting confluent)"), "{}", stdout(&o));
}

#[test]
fn invariant_commands() {
    assert_eq!(stdout(&grouphom(&["h1", "fixture:free2"])).trim(), "[0, 0]");
    assert_eq!(stdout(&grouphom(&["h1", "fixture:sigma5"])).trim(), "[2]");
    assert_eq!(stdout(&grouphom(&["h1modp", "fixture:sigma5", "-p", "2"])).trim(), "1");
    assert_eq!(stdout(&grouphom(&["tor", "fixture:z4", "-p", "3"])).trim(), "0");
    assert_eq!(stdout(&grouphom(&["prank", "fixture:z4", "-p", "2"])).trim(), "2");
    let v = json(&grouphom(&["h1", "fixture:klein", "--json"]));
    assert_eq!(v["invariants"], serde_json::json!([2, 2]));
}

#[test]
fn h2_json_schema_and_determinism() {
    let args = ["h2", "fixture:sigma5", "-p", "2", "--json"];
    let first = grouphom(&args);
    assert_eq!(first.status.code(), Some(0));
    let mut a = json(&first);
    for key in ["a", "b", "c", "e", "d", "exact", "all_confluent", "pass_history", "survivors", "statuses", "wall_times_ms"] {
        assert!(a.get(key).is_some(), "missing {key}");
    }
    assert_eq!((a["a"].as_i64(), a["b"].as_i64(), a["c"].as_i64(), a["e"].as_i64(), a["d"].as_i64()),
        (Some(1), Some(1), Some(3), Some(3), Some(2)));
    assert_eq!(a["exact"], Value::Bool(true));
    assert_eq!(a["survivors"].as_array().unwrap().len(), 3);
    let mut b = json(&grouphom(&args));
    a.as_object_mut().unwrap().remove("wall_times_ms");
    b.as_object_mut().unwrap().remove("wall_times_ms");
    assert_eq!(a, b);
}

#[test]
fn cap_reports_upper_bound_with_exit_2() {
    let o = grouphom(&["h2", "fixture:sigma5", "-p", "2", "--max-eqns", "10", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["exact"], Value::Bool(false));
    assert!(v["d"].as_i64().unwrap() >= 2);
    let o = grouphom(&["h2", "fixture:sigma5", "-p", "2", "--max-eqns", "10"]);
    assert!(stdout(&o).contains("(upper bound: rewriting not confluent)"));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.pres", "generators: a\nrelators: a^2 c\n");
    let o = grouphom(&["h1", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown generator `c`"));
    assert_eq!(grouphom(&["h1", "missing.pres"]).status.code(), Some(1));
    assert_eq!(grouphom(&["h2", "fixture:z4"]).status.code(), Some(1));
    assert_eq!(grouphom(&["tor", "fixture:z4", "-p", "4"]).status.code(), Some(1));
    assert_eq!(grouphom(&["h2", "fixture:z4", "-p", "2", "--sublist", "0"]).status.code(), Some(1));
    assert_eq!(grouphom(&["h2", "fixture:z4", "-p", "2", "--sublist", "2"]).status.code(), Some(1));
    assert_eq!(grouphom(&["reduce", "fixture:z4", "-p", "2"]).status.code(), Some(1));
    assert_eq!(grouphom(&["h1", "fixture:nope"]).status.code(), Some(1));
    assert_eq!(grouphom(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn sublist_is_one_based() {
    let v = json(&grouphom(&["h2", "fixture:z4_redundant", "-p", "2", "--sublist", "1", "--json"]));
    assert_eq!(v["survivors"], serde_json::json!(["a^4"]));
    assert_eq!(v["d"].as_i64(), Some(1));
    // a⁸ alone does not generate R modulo [F,R]R², and is trivial in ℤ/8
    let v = json(&grouphom(&["h2", "fixture:z4_redundant", "-p", "2", "--sublist", "2", "--json"]));
    assert_eq!(v["survivors"], serde_json::json!([]));
}

#[test]
fn reduce_in_heisenberg_quotient() {
    let o = grouphom(&["reduce", "fixture:z2", "-p", "3", "--word", "[a, b]", "--sublist", "none", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["identity"], Value::Bool(false));
    assert_eq!(v["status"], "confluent");
    let v = json(&grouphom(&["reduce", "fixture:z2", "-p", "3", "--word", "[a, b]", "--json"]));
    assert_eq!(v["identity"], Value::Bool(true));
}

#[test]
fn dumped_rules_reload() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("s5.rules");
    let rules = rules.to_str().unwrap();
    let first = json(&grouphom(&["kb", "fixture:sigma5", "--json", "--dump-rules", rules]));
    assert_eq!(first["normal_forms"].as_u64(), Some(120));
    let again = json(&grouphom(&["kb", "fixture:sigma5", "--json", "--load-rules", rules]));
    assert_eq!(again["rules"], first["rules"]);
    assert_eq!(again["normal_forms"], first["normal_forms"]);

    let qrules = dir.path().join("q.rules");
    let q = qrules.to_str().unwrap();
    let word = "(a^2 b a^-2 b)^2";
    let built = json(&grouphom(&["reduce", "fixture:sigma5", "-p", "2", "--word", word, "--sublist", "1,2", "--json", "--dump-rules", q]));
    let loaded = json(&grouphom(&["reduce", "fixture:sigma5", "-p", "2", "--word", word, "--json", "--load-rules", q]));
    assert_eq!(built["reduced"], loaded["reduced"]);
    assert_eq!(loaded["status"], "confluent");
}

#[test]
fn simplify_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&grouphom(&["simplify", "fixture:sl2_3"]));
    let path = write(dir.path(), "s.pres", &out);
    assert_eq!(stdout(&grouphom(&["h1", &path])), stdout(&grouphom(&["h1", "fixture:sl2_3"])));
    let v = json(&grouphom(&["simplify", "fixture:sl2_3", "--json"]));
    assert!(v["generators"].as_array().unwrap().len() <= 8);
}

#[test]
fn fixtures_are_listed() {
    let list = stdout(&grouphom(&["fixtures"]));
    for name in ["sigma5", "sl2_3", "sl2_5", "sl2_7", "z4"] {
        assert!(list.lines().any(|l| l == name), "{name} missing");
    }
}
