//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function takes plain strings and numbers and returns a JSON
//! string. The `*_json` functions hold the logic and are plain Rust, so they
//! are tested natively.

use hypsep::conic::cardinal_points;
use hypsep::contractor::{forward_backward, minimal_hyperbola};
use hypsep::io::{to_svg, Markers, SvgStyle};
use hypsep::paver::pave;
use hypsep::separator::conic_area;
use hypsep::tdoa::Scenario;
use hypsep::{Box2, ConicParams, ContractorKind, Paving};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_box(s: &str) -> Result<Box2, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{}`: {e}", t.trim())))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c, d] if v.iter().all(|x| x.is_finite()) && a <= b && c <= d => Ok(Box2::from_bounds(a, b, c, d)),
        _ => Err(format!("expected four finite bounds x1lo,x1hi,x2lo,x2hi with lo <= hi, got `{s}`")),
    }
}

fn bounds(b: &Box2) -> Value {
    if b.is_empty() {
        Value::Null
    } else {
        json!([b.x1().lo(), b.x1().hi(), b.x2().lo(), b.x2().hi()])
    }
}

fn metrics(p: &Paving) -> Value {
    let m = p.metrics();
    json!({
        "area_in": m.area_in,
        "area_out": m.area_out,
        "area_unc": m.area_unc,
        "n_boxes": m.n_boxes,
    })
}

fn style(width: f64) -> SvgStyle {
    SvgStyle { width, outline: true }
}

/// Paving of `{f(q, x) ≤ 0}` as `{"svg": …, "metrics": {…}, "cardinal": n}`.
pub fn pave_hyperbola_json(q: &str, frame: &str, eps: f64, contractor: &str, width: f64) -> Result<String, String> {
    let q: ConicParams = q.parse().map_err(|e: hypsep::Error| e.to_string())?;
    let frame = parse_box(frame)?;
    let kind: ContractorKind = contractor.parse().map_err(|e: hypsep::Error| e.to_string())?;
    let sep = conic_area(&q, kind).map_err(|e| e.to_string())?;
    let p = pave(sep.as_ref(), &frame, eps).map_err(|e| e.to_string())?;
    let cardinal = cardinal_points(&q);
    let svg = to_svg(&p, &Markers { cardinal: Some(cardinal), points: vec![] }, &style(width));
    Ok(json!({ "svg": svg, "metrics": metrics(&p), "cardinal": cardinal.count() }).to_string())
}

/// Paving of the localization set of a scenario given as JSON.
pub fn pave_tdoa_json(scenario: &str, contractor: &str, width: f64) -> Result<String, String> {
    let s = Scenario::from_json(scenario).map_err(|e| e.to_string())?;
    let kind: ContractorKind = contractor.parse().map_err(|e: hypsep::Error| e.to_string())?;
    let sep = s.localization_set(kind).map_err(|e| e.to_string())?;
    let p = pave(sep.as_ref(), &s.frame_box(), s.eps).map_err(|e| e.to_string())?;
    let markers = Markers { cardinal: None, points: s.microphones.iter().map(|(n, p)| (n.clone(), *p)).collect() };
    Ok(json!({ "svg": to_svg(&p, &markers, &style(width)), "metrics": metrics(&p) }).to_string())
}

/// One box contracted by both contractors of the curve `f(q, x) = 0`:
/// `{"minimal": [..] | null, "fwdbwd": [..] | null}`.
pub fn contract_box_json(q: &str, bx: &str) -> Result<String, String> {
    let q: ConicParams = q.parse().map_err(|e: hypsep::Error| e.to_string())?;
    let b = parse_box(bx)?;
    let minimal = minimal_hyperbola(&q).map_err(|e| e.to_string())?;
    let fb = forward_backward(&q);
    Ok(json!({ "minimal": bounds(&minimal.contract(&b)), "fwdbwd": bounds(&fb.contract(&b)) }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pave_hyperbola(q: &str, frame: &str, eps: f64, contractor: &str, width: f64) -> Result<String, JsError> {
    js(pave_hyperbola_json(q, frame, eps, contractor, width))
}

#[wasm_bindgen]
pub fn pave_tdoa(scenario: &str, contractor: &str, width: f64) -> Result<String, JsError> {
    js(pave_tdoa_json(scenario, contractor, width))
}

#[wasm_bindgen]
pub fn contract_box(q: &str, bx: &str) -> Result<String, JsError> {
    js(contract_box_json(q, bx))
}

/// The example scenario, as a starting point for the editor.
#[wasm_bindgen]
pub fn example_scenario() -> String {
    Scenario::example().to_json()
}
