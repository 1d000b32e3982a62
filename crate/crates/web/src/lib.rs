//! Browser bindings: each call returns a JSON string for `index.html`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use spaceform::dual::polar_dual;
use spaceform::forms::{geodesic_distance, hilbert_distance, klein_lift};
use spaceform::scene::{dual_primal, SceneOutcome};
use spaceform::{run_scene, PolyhedralSurface, SceneConfig, SceneKind};

fn mesh(s: &PolyhedralSurface) -> Result<Value, String> {
    let chart = s.chart().map_err(|e| e.to_string())?;
    Ok(json!({
        "vertices": chart.iter().map(|p| [p.x, p.y, p.z]).collect::<Vec<_>>(),
        "faces": s.faces,
        "stable": s.stable,
        "space": s.space.name(),
    }))
}

fn outcome_json(out: &SceneOutcome) -> Result<String, String> {
    let report = serde_json::to_value(&out.report).map_err(|e| e.to_string())?;
    let mesh = match &out.surface {
        Some(s) => mesh(s)?,
        None => Value::Null,
    };
    Ok(json!({ "report": report, "mesh": mesh }).to_string())
}

/// Runs a named scene. An empty `base_point` keeps the scene default.
pub fn scene(name: &str, depth: usize, seed: u64, base_point: &[f64]) -> Result<String, String> {
    let kind: SceneKind = name.parse().map_err(|e: spaceform::GeomError| e.to_string())?;
    let mut config = SceneConfig::new(kind);
    config.depth = depth;
    config.seed = seed;
    config.export = Vec::new();
    if !base_point.is_empty() {
        config.base_point = Some(base_point.to_vec());
    }
    let out = run_scene(&config).map_err(|e| e.to_string())?;
    outcome_json(&out)
}

/// A random Klein polytope and its polar dual, both in the affine chart.
pub fn polar_pair(seed: u64) -> Result<String, String> {
    let mut config = SceneConfig::new(SceneKind::PolarDual);
    config.seed = seed;
    let p = dual_primal(&config).map_err(|e| e.to_string())?;
    let d = polar_dual(&p).map_err(|e| e.to_string())?;
    Ok(json!({ "primal": mesh(&p)?, "dual": mesh(&d)? }).to_string())
}

/// Distance between two Klein-ball points, by cross-ratio and on the
/// hyperboloid.
pub fn distances(x: &[f64], y: &[f64]) -> Result<String, String> {
    let h = hilbert_distance(x, y).map_err(|e| e.to_string())?;
    let a = klein_lift(x).map_err(|e| e.to_string())?;
    let b = klein_lift(y).map_err(|e| e.to_string())?;
    let d = geodesic_distance(&a, &b).map_err(|e| e.to_string())?;
    Ok(json!({ "hilbert": h, "hyperboloid": d, "difference": (h - d).abs() }).to_string())
}

#[wasm_bindgen(js_name = runScene)]
pub fn run_scene_js(name: &str, depth: usize, seed: u64, base_point: Vec<f64>) -> Result<String, JsError> {
    scene(name, depth, seed, &base_point).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = polarPair)]
pub fn polar_pair_js(seed: u64) -> Result<String, JsError> {
    polar_pair(seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = distances)]
pub fn distances_js(x: Vec<f64>, y: Vec<f64>) -> Result<String, JsError> {
    distances(&x, &y).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scene_returns_report_and_mesh() {
        let v: Value = serde_json::from_str(&scene("parabolic-torus", 3, 0, &[]).unwrap()).unwrap();
        assert_eq!(v["report"]["passed"], true);
        let nv = v["mesh"]["vertices"].as_array().unwrap().len();
        for f in v["mesh"]["faces"].as_array().unwrap() {
            assert!(f.as_array().unwrap().iter().all(|i| (i.as_u64().unwrap() as usize) < nv));
        }
    }

    #[test]
    fn bad_input_is_an_error_string() {
        assert!(scene("torus", 3, 0, &[]).is_err());
        assert!(scene("fuchsian-genus2", 9, 0, &[]).is_err());
        assert!(distances(&[0.0, 0.0, 1.5], &[0.0; 3]).is_err());
    }

    #[test]
    fn polar_pair_transposes_counts() {
        let v: Value = serde_json::from_str(&polar_pair(4).unwrap()).unwrap();
        let count = |m: &Value, k: &str| m[k].as_array().unwrap().len();
        assert_eq!(count(&v["primal"], "vertices"), count(&v["dual"], "faces"));
        assert_eq!(count(&v["primal"], "faces"), count(&v["dual"], "vertices"));
    }

    #[test]
    fn distances_agree() {
        let v: Value = serde_json::from_str(&distances(&[0.1, 0.2, -0.3], &[-0.5, 0.1, 0.2]).unwrap()).unwrap();
        assert!(v["difference"].as_f64().unwrap() < 1e-9);
    }
}
