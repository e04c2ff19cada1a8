//! JSON-in, JSON-out entry points for the static demo page in `www/`.
//!
//! The plain functions are what the tests exercise; the `#[wasm_bindgen]`
//! wrappers only convert errors to JS strings.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use invlat::bounds::{bfield, bfieldr, dspan};
use invlat::constructions::{conjecture_bound, sharp_case_check, sharp_case_lattice, SharpCaseSpec};
use invlat::geomnum::successive_minima;
use invlat::rank2::{he_analysis, is_excluded, staircase_dspan_bound, sublattice, StaircaseInput};
use invlat::CongruenceSystem;

/// Largest index the page will search; keeps the tab responsive.
pub const MAX_INDEX: u64 = 2000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `{"moduli":[..],"coefficients":[[..]]}` to the three bounds and the minima.
pub fn lattice_bounds(input: &str) -> Result<Value, String> {
    let sys: CongruenceSystem = serde_json::from_str(input).map_err(err)?;
    let l = sys.lattice();
    let index = l.index_u64().filter(|&n| n <= MAX_INDEX).ok_or(format!("index above {MAX_INDEX}"))?;
    if l.dimension() > 6 {
        return Err("at most 6 coordinates in the browser".into());
    }
    let d = dspan(&l).map_err(err)?;
    let b = bfield(&l).map_err(err)?;
    let r = bfieldr(&l).map_err(err)?;
    Ok(json!({
        "index": index,
        "dimension": l.dimension(),
        "dspan": d,
        "bfield": b,
        "bfieldr": r,
        "minima": successive_minima(&l),
    }))
}

/// Points of the plane lattice with basis `(a, b), (0, d)` in a window around
/// the origin, with the D_span witnesses and, when defined, H and E.
pub fn rank2_picture(a: u64, b: u64, d: u64) -> Result<Value, String> {
    if a == 0 || d == 0 || b >= d {
        return Err("need a, d >= 1 and 0 <= b < d".into());
    }
    let n = a * d;
    if n > 400 {
        return Err("index above 400".into());
    }
    let l = sublattice(a, b, d);
    let r = (n as i64).clamp(4, 24);
    let mut points = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if l.contains_coords(&[x, y]) {
                points.push([x, y]);
            }
        }
    }
    let ds = dspan(&l).map_err(err)?;
    let excluded = is_excluded(&l);
    let he = if excluded { None } else { Some(he_analysis(&l).map_err(err)?) };
    let staircase = match &he {
        Some(h) => {
            let corners: Vec<_> = h.segment.clone();
            Some(staircase_dspan_bound(&StaircaseInput::new(corners).map_err(err)?))
        }
        None => None,
    };
    Ok(json!({
        "n": n,
        "radius": r,
        "points": points,
        "excluded": excluded,
        "dspan": ds,
        "he": he,
        "staircase_bound": staircase,
    }))
}

/// The extremal family at `(p, m)`; `missing` only matters for odd `m`.
pub fn sharp_case(p: u64, m: usize, missing: Option<i64>) -> Result<Value, String> {
    if p > 200 {
        return Err("p above 200".into());
    }
    let spec = SharpCaseSpec::new(p, m, missing).map_err(err)?;
    let report = sharp_case_check(&spec).map_err(err)?;
    Ok(json!({
        "exponents": spec.exponents(),
        "system": sharp_case_lattice(&spec),
        "conjecture_bound": conjecture_bound(p, m as u64),
        "report": report,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = latticeBounds)]
pub fn lattice_bounds_js(input: &str) -> Result<String, JsValue> {
    to_js(lattice_bounds(input))
}

#[wasm_bindgen(js_name = rank2Picture)]
pub fn rank2_picture_js(a: u32, b: u32, d: u32) -> Result<String, JsValue> {
    to_js(rank2_picture(a.into(), b.into(), d.into()))
}

/// `missing` of 0 means the default choice.
#[wasm_bindgen(js_name = sharpCase)]
pub fn sharp_case_js(p: u32, m: u32, missing: i32) -> Result<String, JsValue> {
    to_js(sharp_case(p.into(), m as usize, (missing != 0).then_some(missing.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_of_small_cyclic() {
        let v = lattice_bounds(r#"{"moduli":[4],"coefficients":[[1,3]]}"#).unwrap();
        assert_eq!(v["dspan"]["value"], 2);
        assert_eq!(v["bfield"]["value"], 4);
        assert_eq!(v["minima"]["lambdas"], json!([2, 4]));
        assert!(lattice_bounds("{").is_err());
        assert!(lattice_bounds(r#"{"moduli":[4999],"coefficients":[[1,3]]}"#).is_err());
    }

    #[test]
    fn picture() {
        let v = rank2_picture(1, 3, 7).unwrap();
        assert_eq!(v["excluded"], false);
        assert_eq!(v["he"]["h"], json!([-1, 4]));
        let pts = v["points"].as_array().unwrap();
        assert!(pts.contains(&json!([0, 0])) && pts.contains(&json!([1, 3])));
        assert!(!rank2_picture(2, 0, 2).unwrap()["he"].is_null());
        assert_eq!(rank2_picture(1, 0, 5).unwrap()["excluded"], true);
        assert!(rank2_picture(1, 5, 5).is_err());
    }

    #[test]
    fn sharp() {
        let v = sharp_case(7, 3, None).unwrap();
        assert_eq!(v["report"]["equal"], true);
        assert_eq!(v["conjecture_bound"], 4);
        assert!(sharp_case(6, 2, None).is_err());
    }
}
