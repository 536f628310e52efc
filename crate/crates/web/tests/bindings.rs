use hodge_web::{curve_json, ordinary_json, projective_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn cusp_staircases_match_colengths() {
    let v = parse(&curve_json("x^2 + y^3", 2).unwrap());
    let point = &v["points"][0];
    assert_eq!(point["point"], serde_json::json!(["0", "0"]));
    let stairs = point["staircases"].as_array().unwrap();
    let ideals = point["hodge_ideals"].as_array().unwrap();
    assert_eq!(stairs.len(), 3);
    for (s, i) in stairs.iter().zip(ideals) {
        let n = s["monomials"].as_array().unwrap().len();
        assert_eq!(n.to_string(), i["colength"].as_str().unwrap());
    }
    assert_eq!(stairs[1]["monomials"], serde_json::json!([[0, 0], [1, 0], [0, 1], [0, 2]]));
    assert_eq!(v["all_passed"], true);
}

#[test]
fn smooth_curve_has_no_points() {
    let v = parse(&curve_json("x - y^2", 3).unwrap());
    assert_eq!(v["points"].as_array().unwrap().len(), 0);
}

#[test]
fn errors_are_json() {
    let e = parse(&curve_json("x^2 y", 1).unwrap_err());
    assert_eq!(e["error"]["kind"], "syntax");
    let e = parse(&curve_json("x*y", 7).unwrap_err());
    assert_eq!(e["error"]["kind"], "range");
    let e = parse(&ordinary_json(1, 2, 1).unwrap_err());
    assert!(e["error"]["message"].is_string());
}

#[test]
fn ordinary_closed_form() {
    let v = parse(&ordinary_json(5, 3, 1).unwrap());
    assert_eq!(v["ideal"]["kind"], "exact");
}

#[test]
fn projective_cubic() {
    let input = r#"{"equation": "z*y^2 - x^3", "vars": ["x", "y", "z"], "mode": "computed"}"#;
    let v = parse(&projective_json(input, Some(1)).unwrap());
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["singular_points"][0]["point"], serde_json::json!(["0", "0", "1"]));
}
