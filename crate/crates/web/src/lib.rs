//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function returns a JSON string. The `*_json` functions hold
//! the logic and are plain Rust so they can be tested natively.

use hodge_core::cli::{ordinary_report, projective_report, PointReport};
use hodge_core::jet::{JetIdeal, DEFAULT_CAP};
use hodge_core::resolution::PlaneCurve;
use hodge_core::surface::PointAnalysis;
use hodge_core::Error;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest k the demo computes; the pipeline grows quickly with k.
pub const DEMO_KMAX: u32 = 6;

/// Exponent pairs of the monomials outside the leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub k: u32,
    pub monomials: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemoPoint {
    #[serde(flatten)]
    pub report: PointReport,
    pub staircases: Vec<Staircase>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveDemo {
    pub equation: String,
    pub points: Vec<DemoPoint>,
    pub all_passed: bool,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn error_json(e: &Error) -> String {
    serde_json::json!({ "error": ErrorBody { kind: e.kind(), message: e.to_string() } }).to_string()
}

fn to_json<T: Serialize>(r: Result<T, Error>) -> Result<String, String> {
    match r {
        Ok(v) => serde_json::to_string(&v).map_err(|e| error_json(&Error::Internal(e.to_string()))),
        Err(e) => Err(error_json(&e)),
    }
}

fn staircase(k: usize, ideal: &JetIdeal) -> Staircase {
    let monomials = ideal
        .standard_monomials()
        .iter()
        .map(|m| [m.exponents()[0], m.exponents()[1]])
        .collect();
    Staircase { k: k as u32, monomials }
}

fn check_demo_kmax(kmax: u32) -> Result<(), Error> {
    if kmax > DEMO_KMAX {
        return Err(Error::Range(format!("kmax must be at most {DEMO_KMAX} in the demo")));
    }
    Ok(())
}

fn curve_demo(equation: &str, kmax: u32) -> Result<CurveDemo, Error> {
    check_demo_kmax(kmax)?;
    let curve = PlaneCurve::parse(equation, None)?;
    let mut points = Vec::new();
    for center in curve.singular_points()? {
        let a = PointAnalysis::run(&curve, &center, kmax, DEFAULT_CAP)?;
        let staircases = a.family.ideals().iter().enumerate().map(|(k, i)| staircase(k, i)).collect();
        points.push(DemoPoint { report: PointReport::new(&a)?, staircases });
    }
    Ok(CurveDemo {
        equation: curve.equation().render(curve.names()),
        all_passed: points.iter().all(|p| p.report.passed),
        points,
    })
}

/// Hodge ideals, resolution data and checks at every singular point of a plane curve.
pub fn curve_json(equation: &str, kmax: u32) -> Result<String, String> {
    to_json(curve_demo(equation, kmax))
}

/// Closed form for an ordinary singularity of multiplicity m in dimension n.
pub fn ordinary_json(n: u32, m: u32, k: u32) -> Result<String, String> {
    to_json(ordinary_report(n, m, k))
}

/// Projective verification of a hypersurface given in the CLI's JSON input format.
pub fn projective_json(input: &str, kmax: Option<u32>) -> Result<String, String> {
    to_json(kmax.map_or(Ok(()), check_demo_kmax).and_then(|_| projective_report(input, kmax, DEFAULT_CAP)))
}

#[wasm_bindgen]
pub fn curve(equation: &str, kmax: u32) -> Result<String, JsValue> {
    curve_json(equation, kmax).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ordinary(n: u32, m: u32, k: u32) -> Result<String, JsValue> {
    ordinary_json(n, m, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn projective(input: &str, kmax: Option<u32>) -> Result<String, JsValue> {
    projective_json(input, kmax).map_err(|e| JsValue::from_str(&e))
}
