//! Browser bindings. Each export takes plain strings and returns a JSON
//! object; failures come back as `{"error": "..."}`.

use dpsurgery::configuration::tori;
use dpsurgery::knot::{braid_alexander, BraidWord, LaurentPoly};
use dpsurgery::presentation::{verify_abelian_isomorphism, AbelianGroup, Bounds, Presentation};
use dpsurgery::sw::distinguish as sw_distinguish;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn knot(s: &str) -> Result<BraidWord, String> {
    let b: BraidWord = s.parse().map_err(|e| format!("braid `{s}`: {e}"))?;
    if !b.closure_is_knot() {
        return Err(format!("closure of `{b}` has {} components, need a knot", b.component_count()));
    }
    Ok(b)
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({
        "text": p.to_string(),
        "min_degree": p.min_degree(),
        "coefficients": p.coefficients(),
    })
}

fn or_error(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn alexander(braid: &str) -> Result<Value, String> {
    let b = knot(braid)?;
    let d = braid_alexander(&b).map_err(|e| e.to_string())?;
    Ok(json!({
        "braid": b.to_string(),
        "alexander": poly_json(&d),
        "multiset": d.coefficient_multiset(),
        "determinant": d.value_at_minus_one().abs(),
    }))
}

pub fn verify(presentation: &str, target: &str) -> Result<Value, String> {
    let p = Presentation::parse(presentation).map_err(|e| e.to_string())?;
    let t: AbelianGroup = target.parse().map_err(|e: String| format!("target: {e}"))?;
    let v = verify_abelian_isomorphism(&p, &t, &Bounds::default());
    Ok(json!({
        "presentation": p.to_text(),
        "target": t.to_string(),
        "verdict": v.status.to_string(),
        "evidence": v.evidence,
    }))
}

/// Compares two knots by surgery on the tori configuration with m=3, n=2.
pub fn distinguish(k1: &str, k2: &str) -> Result<Value, String> {
    let (a, b) = (knot(k1)?, knot(k2)?);
    let c = tori(3, 2).map_err(|e| e.to_string())?;
    let r = sw_distinguish(&a, &b, &c, None).map_err(|e| e.to_string())?;
    let polys = [&a, &b].map(|k| braid_alexander(k).map(|d| poly_json(&d)).map_err(|e| e.to_string()));
    let [pa, pb] = polys;
    Ok(json!({
        "name": r.name(),
        "verdict": r.verdict.to_string(),
        "evidence": r.evidence(),
        "audit": r.audit.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "alexander": [pa?, pb?],
        "values": r.values.as_ref().map(|(x, y)| [x.to_string(), y.to_string()]),
    }))
}

#[wasm_bindgen]
pub fn alexander_json(braid: &str) -> String {
    or_error(alexander(braid))
}

#[wasm_bindgen]
pub fn verify_json(presentation: &str, target: &str) -> String {
    or_error(verify(presentation, target))
}

#[wasm_bindgen]
pub fn distinguish_json(k1: &str, k2: &str) -> String {
    or_error(distinguish(k1, k2))
}
