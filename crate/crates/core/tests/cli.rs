use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = hodge(&all);
    (serde_json::from_str(&stdout(&o)).expect("valid JSON"), o.status.code().unwrap())
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn cusp_text_report() {
    let o = hodge(&["curve", "x^2+y^3", "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("I_1 = (x^2, x*y, y^3)"));
    assert!(text.contains("I_2 = (x^3, x^2*y^2, x*y^3, y^4 - 3*x^2*y)"));
    assert!(text.contains("lct = 5/6"));
    assert!(text.contains("all checks passed"));
}

#[test]
fn node_json_report() {
    let (v, code) = json(&["curve", "x*y", "--kmax", "3"]);
    assert_eq!(code, 0);
    let ideals = v["points"][0]["hodge_ideals"].as_array().unwrap();
    let colengths: Vec<&str> = ideals.iter().map(|i| i["colength"].as_str().unwrap()).collect();
    assert_eq!(colengths, ["0", "1", "3", "6"]);
    assert_eq!(ideals[2]["generators"], serde_json::json!(["x^2", "x*y", "y^2"]));
    assert_eq!(v["points"][0]["node"], true);
    assert_eq!(v["all_passed"], true);
}

#[test]
fn json_output_is_deterministic() {
    let a = stdout(&hodge(&["curve", "x*y*(x-y)*(x+y-2)", "--kmax", "2", "--json"]));
    let b = stdout(&hodge(&["curve", "x*y*(x-y)*(x+y-2)", "--kmax", "2", "--json"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let points: Vec<&Value> = v["points"].as_array().unwrap().iter().map(|p| &p["point"]).collect();
    assert_eq!(points.len(), 4);
    assert_eq!(points[0], &serde_json::json!(["0", "0"]));
}

#[test]
fn custom_variables_and_point() {
    let (v, code) = json(&["curve", "(u - 1/2)^2 + v^3", "--vars", "u,v", "--point", "1/2,0", "--kmax", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"][0]["point"], serde_json::json!(["1/2", "0"]));
    assert_eq!(v["points"][0]["hodge_ideals"][1]["colength"], "4");
    let gens = v["points"][0]["hodge_ideals"][1]["generators"].as_array().unwrap();
    assert!(gens.iter().all(|g| g.as_str().unwrap().contains('u') || g.as_str().unwrap().contains('v')));
}

#[test]
fn smooth_curve() {
    let o = hodge(&["curve", "x^2+y^2+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no singular rational points; all I_k trivial"));
}

#[test]
fn input_errors() {
    for args in [
        vec!["curve", "x^2 +* y"],
        vec!["curve", "x^2*y"],
        vec!["curve", "x^2 + z"],
        vec!["curve", "x*y", "--kmax", "9"],
        vec!["curve", "(x^2 - 2)*(y - x)"],
        vec!["snc", "--n", "2", "--r", "3", "--k", "1"],
        vec!["ordinary", "--n", "1", "--m", "2", "--k", "0"],
        vec!["diagonal", "1", "2"],
        vec!["projective", "/nonexistent.json"],
    ] {
        let o = hodge(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error"), "{args:?}");
    }
    let (v, code) = json(&["curve", "x^2*y"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "not_squarefree");
    // usage errors are input errors too
    assert_eq!(hodge(&["curve"]).status.code(), Some(1));
}

#[test]
fn closed_forms() {
    let (v, _) = json(&["snc", "--n", "4", "--r", "3", "--k", "2"]);
    assert_eq!(v["count"], "6");
    assert!(stdout(&hodge(&["ordinary", "--n", "5", "--m", "3", "--k", "1"])).contains("I_1 = m^1 (exact, mk<n)"));
    let (v, _) = json(&["ordinary", "--n", "3", "--m", "3", "--k", "1"]);
    assert_eq!(v["ideal"]["kind"], "sandwich");
    assert_eq!(v["ideal"]["defect_length"], "3");
    assert!(stdout(&hodge(&["diagonal", "2", "2", "2", "2"])).contains("trivial for k ≤ 1"));
    let (v, _) = json(&["diagonal", "2", "3"]);
    assert_eq!(v["bound"], "-1/6");
    assert_eq!(v["trivial_up_to"], Value::Null);
}

#[test]
fn projective_files() {
    let (v, code) = json(&["projective", &data("triangle.json"), "--kmax", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["subschemes"][1]["degree"], "3");
    let (v, code) = json(&["projective", &data("cuspidal_cubic.json"), "--kmax", "1"]);
    assert_eq!(code, 0);
    let ind = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "independent-conditions" && c["k"] == "1").unwrap();
    assert_eq!(ind["evaluation"]["rank"], "4");
    for f in ["smooth_conic.json", "smooth_quadric.json"] {
        let (v, code) = json(&["projective", &data(f), "--kmax", "2"]);
        assert_eq!(code, 0);
        assert!(v["subschemes"].as_array().unwrap().iter().all(|z| z["degree"] == "-1"));
    }
    let (v, code) = json(&["projective", &data("triple_point_quartic.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["kmax"], "1");
    assert_eq!(v["subschemes"][1]["degree"], "5");
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "jet-separation"));
    let o = hodge(&["projective", &data("triple_point_quartic.json"), "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

fn assert_no_numbers(v: &Value, path: &str) {
    match v {
        Value::Number(n) => panic!("bare number {n} at {path}"),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| assert_no_numbers(x, &format!("{path}[{i}]"))),
        Value::Object(o) => o.iter().for_each(|(k, x)| assert_no_numbers(x, &format!("{path}.{k}"))),
        _ => {}
    }
}

#[test]
fn json_numbers_are_strings() {
    let triangle = data("triangle.json");
    let quartic = data("triple_point_quartic.json");
    for args in [
        vec!["curve", "x^2+y^3", "--kmax", "2"],
        vec!["curve", "x^2+y^2+1"],
        vec!["snc", "--n", "3", "--r", "2", "--k", "2"],
        vec!["ordinary", "--n", "5", "--m", "3", "--k", "1"],
        vec!["ordinary", "--n", "3", "--m", "3", "--k", "1"],
        vec!["diagonal", "2", "3", "4"],
        vec!["projective", &triangle, "--kmax", "1"],
        vec!["projective", &quartic],
        vec!["curve", "x^2*y"],
    ] {
        let (v, _) = json(&args);
        assert_no_numbers(&v, &format!("{args:?}"));
    }
}
