use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use splice_core::tropfan::Fan;
use splice_core::SystemDocument;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splice")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_splice"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const NOT_COPRIME: &str = r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},{"id":"y","kind":"leaf"},{"id":"z","kind":"leaf"}],
 "edges":[{"u":"v","v":"x","dec_u":2},{"u":"v","v":"y","dec_u":4},{"u":"v","v":"z","dec_u":5}]}"#;

const NEGATIVE_DETERMINANT: &str = r#"{"vertices":[{"id":"u","kind":"node"},{"id":"w","kind":"node"},
 {"id":"p","kind":"leaf"},{"id":"q","kind":"leaf"},{"id":"s","kind":"leaf"},{"id":"t","kind":"leaf"}],
 "edges":[{"u":"u","v":"p","dec_u":2},{"u":"u","v":"q","dec_u":3},{"u":"u","v":"w","dec_u":1,"dec_v":1},
 {"u":"w","v":"s","dec_u":5},{"u":"w","v":"t","dec_u":7}]}"#;

#[test]
fn validate_reports() {
    let out = run(&["validate", &data("two_node_42_110.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["determinant"]["ok"], true);
    assert_eq!(v["semigroup"]["satisfied"], true);

    let out = run_stdin(&["validate", "-"], NOT_COPRIME);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["coprimality"]["ok"], false);
    assert_eq!(v["valid"], false);

    let out = run_stdin(&["validate", "-"], NEGATIVE_DETERMINANT);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["determinant"]["ok"], false);
    assert!(v["determinant"]["citations"][0].as_str().unwrap().contains("`u`-`w`"));
}

#[test]
fn analyze_reports() {
    let v = json(&run(&["analyze", &data("e8.json")]));
    assert_eq!(v["nodes"][0]["weight"], serde_json::json!(["15", "10", "6"]));
    assert_eq!(v["nodes"][0]["seifert"], serde_json::json!([2, 3, 5]));

    let v = json(&run(&["analyze", &data("two_node_294_770.json")]));
    let ids: Vec<&str> = v["vertices"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let (a, b) = (ids.iter().position(|&x| x == "a").unwrap(), ids.iter().position(|&x| x == "b").unwrap());
    assert_eq!(v["linking"][a][b], "420");
    assert_eq!(v["nodes"][0]["degree"], "294");
    assert_eq!(v["nodes"][1]["degree"], "770");

    let single = r#"{"vertices":[{"id":"x","kind":"leaf"}],"edges":[]}"#;
    let out = run_stdin(&["analyze", "-"], single);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(json(&out)["nodes"], serde_json::json!([]));
}

#[test]
fn systems_round_trip_and_check() {
    let out = run(&["gen-system", &data("two_node_42_110.json"), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let doc = SystemDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json().trim_end(), text.trim_end());

    let out = run_stdin(&["check", "-", "--homogeneity"], &text);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["degrees"], serde_json::json!({"a": "42", "b": "110"}));

    let out = run_stdin(&["check", "-", "--hamm"], &text);
    assert_eq!(json(&out)["passed"], true);

    let out = run_stdin(&["check", "-", "--initial", "--weight", "1,1,1,1"], &text);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["generator_monomial_free"], false);
    let out = run_stdin(&["check", "-", "--initial", "--weight", "21,14,12,30"], &text);
    assert_eq!(json(&out)["generator_monomial_free"], true);
}

#[test]
fn explicit_coefficients() {
    let dir = std::env::temp_dir().join(format!("splice-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("coeffs.json");
    std::fs::write(&file, r#"{"a": [[1, -1, 1]], "b": [["1", "1", "-1"]]}"#).unwrap();
    let out = run(&["gen-system", &data("two_node_42_110.json"), "--coeffs", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = SystemDocument::from_json(&stdout(&out)).unwrap();
    let eqs: Vec<String> = doc.all_equations().unwrap().iter().map(|(_, _, f)| f.to_string()).collect();
    assert_eq!(eqs, vec!["z1^2 - z2^3 + z3*z4", "z1*z2^4 + z3^5 - z4^2"]);

    std::fs::write(&file, r#"{"a": [[1, 0, 1]], "b": [[1, 1, -1]]}"#).unwrap();
    let out = run(&["gen-system", &data("two_node_42_110.json"), "--coeffs", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Hamm");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deformation_command() {
    let out = run(&["deform", &data("two_node_294_770.json"), "--edge", "a,b", "--policy", "min"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v = json(&out);
    assert_eq!(v["deformation"]["ka"], 1);
    assert_eq!(v["deformation"]["kb"], 7);
    assert_eq!(v["deformation"]["D"], "539");
    assert_eq!(v["variables"][0], "z0");
    let doc = SystemDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json().trim_end(), text.trim_end());
    let out = run_stdin(&["check", "-", "--homogeneity"], &text);
    assert_eq!(json(&out)["degrees"], serde_json::json!({"a": "22638", "b": "37730"}));

    let out = run(&[
        "deform", &data("two_node_294_770.json"), "--edge", "a,b", "--ka", "1", "--kb", "7", "--D", "1078", "--c", "b:2=-1",
    ]);
    let v = json(&out);
    assert_eq!(v["deformation"]["D"], "1078");
    assert_eq!(v["deformation"]["c"]["b"], serde_json::json!(["1", "-1"]));

    let out = run(&["deform", &data("two_node_294_770.json"), "--edge", "a,b", "--ka", "1", "--kb", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Triple");

    let out = run(&["deform", &data("e8.json"), "--edge", "v,x"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "NotInternal");
}

#[test]
fn fans() {
    let out = run(&["trop-fan", &data("e8.json"), "--surface"]);
    assert_eq!(out.status.code(), Some(0));
    let f = Fan::from_json(&stdout(&out)).unwrap();
    assert_eq!(f.cones.len(), 3);
    assert_eq!(f.to_json().trim_end(), stdout(&out).trim_end());

    let out = run(&["trop-fan", &data("two_node_42_110.json"), "--surface", "--format", "dot"]);
    assert!(stdout(&out).contains("\"a\" -- \"b\""));

    let out = run(&["trop-fan", &data("two_node_294_770.json"), "--deformation", "--edge", "a,b"]);
    let f = Fan::from_json(&stdout(&out)).unwrap();
    assert!(f.partial);
    assert_eq!(f.rays.len(), 9);

    let out = run(&["trop-fan", &data("two_node_294_770.json"), "--deformation", "--edge", "a,b", "--format", "dot"]);
    let dot = stdout(&out);
    assert!(dot.contains("\"a\" -- \"r\"") && dot.contains("\"b\" -- \"r\""));
    assert!(!dot.contains("\"a\" -- \"b\""));
}

#[test]
fn rounding_fibers() {
    let v = json(&run(&["round-fiber", "--generators", "2", "--relations", ""]));
    assert_eq!(v["rank"], 2);
    assert_eq!(v["torsion"], serde_json::json!([]));
    assert_eq!(v["components"], "1");
    let v = json(&run(&["round-fiber", "--generators", "2", "--relations", "2,-2"]));
    assert_eq!(v["rank"], 1);
    assert_eq!(v["torsion"], serde_json::json!(["2"]));
    assert_eq!(v["components"], "2");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["trop-fan", &data("e8.json")]).status.code(), Some(2));
    assert_eq!(run(&["round-fiber", "--generators", "2", "--relations", "1"]).status.code(), Some(2));
    assert_eq!(run(&["deform", &data("e8.json"), "--edge", "v"]).status.code(), Some(2));
    assert_eq!(run(&["check", &data("e8.json"), "--initial"]).status.code(), Some(2));
}

#[test]
fn missing_file_is_a_domain_failure() {
    let out = run(&["analyze", "/nonexistent/diagram.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Io");
    let out = run_stdin(&["analyze", "-"], "{ not json");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Syntax");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", "two_node_294_770.json"],
        vec!["gen-system", "two_node_294_770.json"],
        vec!["deform", "two_node_294_770.json", "--edge", "a,b"],
        vec!["trop-fan", "two_node_294_770.json", "--deformation", "--edge", "a,b"],
    ] {
        let path = data(args[1]);
        let mut full: Vec<&str> = args.clone();
        full[1] = &path;
        let first = run(&full).stdout;
        assert_eq!(run(&full).stdout, first);
    }
}
