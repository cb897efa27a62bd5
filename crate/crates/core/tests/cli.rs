mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coprime"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    common::fixtures_dir().join(name).to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args, None);
    let text = if out.is_empty() { err } else { out };
    (code, serde_json::from_str(&text).unwrap())
}

#[test]
fn filt_z12_report() {
    let (code, v) = json(&["filt", &fixture("z12.cpf"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "filt");
    assert_eq!(v["ring"], "Z");
    assert_eq!(v["result"]["order"], serde_json::json!([["2"], ["3"]]));
    let torsion: Vec<&Value> = v["result"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| &s["invariants"]["torsion"])
        .collect();
    assert_eq!(torsion, [&serde_json::json!(["4"]), &serde_json::json!(["3"])]);
    assert_eq!(v["verification"]["all_passed"], true);
}

#[test]
fn order_flag_overrides_the_file() {
    let (code, v) = json(&["filt", &fixture("z12.cpf"), "--json", "--order", "(3),(2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], serde_json::json!([["3"], ["2"]]));
    let (code, v) = json(&["filt", &fixture("z12.cpf"), "--json", "--order", "canonical"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], serde_json::json!([["2"], ["3"]]));
}

#[test]
fn bad_order_is_unsupported() {
    let (code, v) = json(&["filt", &fixture("z12.cpf"), "--json", "--order", "(5)"]);
    assert_eq!(code, 2);
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn zero_module_ass_is_empty() {
    let (code, v) = json(&["ass", &fixture("zero.cpf"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ass"], serde_json::json!([]));
}

#[test]
fn reads_stdin() {
    let (code, out, _) = run(&["ass", "-"], Some("ring Z\nmodule M = coker [[6]]\n"));
    assert_eq!(code, 0);
    assert!(out.contains("{(2),(3)}"), "{out}");
}

#[test]
fn parse_errors_are_located_and_classed() {
    for (file, kind, line, column) in [
        ("bad_lexical.cpf", "lexical", 2, 22),
        ("bad_syntax.cpf", "syntax", 2, 23),
        ("bad_modulus.cpf", "semantic", 1, 9),
        ("bad_variable.cpf", "semantic", 2, 22),
        ("bad_generator.cpf", "semantic", 2, 20),
    ] {
        let (code, out, err) = run(&["ass", &fixture(file), "--json"], None);
        assert_eq!(code, 1, "{file}");
        assert!(out.is_empty(), "{file}: errors go to stderr");
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"]["kind"], kind, "{file}");
        assert_eq!(v["error"]["line"], line, "{file}");
        assert_eq!(v["error"]["column"], column, "{file}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate", &fixture("z12.cpf")], None).0, 1);
    assert_eq!(run(&["ass", "/nonexistent/file.cpf"], None).0, 1);
    assert_eq!(run(&["ass"], None).0, 1);
    assert_eq!(run(&["filt", &fixture("z12.cpf"), "--module", "nope"], None).0, 1);
}

#[test]
fn unsupported_inputs_exit_two() {
    assert_eq!(run(&["filt", &fixture("zero.cpf")], None).0, 2);
    assert_eq!(run(&["omega", &fixture("z12.cpf")], None).0, 2);
    assert_eq!(run(&["filt", &fixture("omega.cpf")], None).0, 2);
    assert_eq!(run(&["swap", &fixture("x2xy.cpf")], None).0, 2);
    assert_eq!(run(&["oracle", &fixture("xy.cpf")], None).0, 2);
}

#[test]
fn decompose_xy_fails_with_witness() {
    let (code, v) = json(&["decompose", &fixture("xy.cpf"), "--json"]);
    assert_eq!(code, 3);
    let details = &v["error"]["details"]["witness"];
    assert_eq!(details["ideal_sum"], serde_json::json!(["x", "y"]), "{details}");
    assert_eq!(details["kernel_sum_proper"], true);
}

#[test]
fn omega_chains() {
    let (code, v) = json(&["omega", &fixture("omega.cpf"), "--json", "--prefix", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["chain"].as_array().unwrap().len(), 5);
    let (code, v) = json(&["omega", &fixture("omega.cpf"), "--json", "--alternative"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["e_first_failure"], 1, "{v}");
    assert_eq!(v["result"]["intersection_certificate"]["issued"], true);
}

#[test]
fn swap_and_module_selection() {
    let (code, v) = json(&["swap", &fixture("xy.cpf"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["after"]["order"], serde_json::json!([["y"], ["x"]]));
    assert_eq!(v["result"]["before"]["order"], serde_json::json!([["x"], ["y"]]));
    let (code, v) = json(&["ass", &fixture("z_noncyclic.cpf"), "--json", "--module", "A"]);
    assert_eq!(code, 0);
    assert_eq!(v["module"]["name"], "A");
    assert_eq!(v["result"]["ass"], serde_json::json!([["2"], ["3"]]));
}

#[test]
fn report_problem_reparses_to_itself() {
    let (_, v) = json(&["extensions", &fixture("z210.cpf"), "--json"]);
    let text = v["problem"].as_str().unwrap();
    let (code, out, _) = run(&["extensions", "-", "--json"], Some(text));
    assert_eq!(code, 0);
    let again: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(again, v);
    assert_eq!(v["result"]["extensions"].as_array().unwrap().len(), 24);
}
