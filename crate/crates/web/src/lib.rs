//! Browser bindings: build a lower-bound set, view its Yao graph at any
//! radius, compute connectivity radii and draw random instances.
//!
//! Every export takes and returns JSON strings; errors surface as thrown
//! strings on the JS side.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use yao_connectivity::counterexamples::minimal_y2_chain;
use yao_connectivity::instances::{random_connected_instance, InstanceConfig, Model};
use yao_connectivity::io::PointSetFile;
use yao_connectivity::plot::{render_svg, EdgeLayer};
use yao_connectivity::{
    components, connectivity_radius, disk_graph, generate_family, verify_counterexample,
    yao_undirected, Cones, ConstructionParams, Family, PointSet, Radius,
};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse_points(points_json: &str) -> Result<PointSet, String> {
    PointSetFile::from_json(points_json)
        .and_then(|f| f.to_point_set())
        .map_err(err)
}

/// `NaN` or a non-positive `r` keeps the family default.
pub fn construct_inner(
    family: &str,
    d: f64,
    eps: f64,
    alpha: f64,
    r: i32,
) -> Result<String, String> {
    let family: Family = family.parse().map_err(err)?;
    let mut params = ConstructionParams::defaults(family, d).map_err(err)?;
    if !eps.is_nan() {
        params.eps = eps;
    }
    if !alpha.is_nan() {
        params.alpha = alpha;
    }
    if r > 0 {
        params.r = r as usize;
    } else if family == Family::Y2Lower {
        params.validate().map_err(err)?;
        params.r = minimal_y2_chain(params.d, params.eps, params.alpha).map_err(err)?;
    }
    let s = generate_family(&params).map_err(err)?;
    let report = verify_counterexample(&s, family.cones(), params.d).map_err(err)?;
    let view = view(&s, family.cones(), params.d)?;
    Ok(json!({
        "params": params,
        "points": PointSetFile::from_point_set(&s),
        "report": report,
        "passed": report.passed(),
        "svg": view["svg"],
        "components": view["components"],
    })
    .to_string())
}

fn view(s: &PointSet, cones: Cones, d: f64) -> Result<Value, String> {
    let gd = disk_graph(s, d).map_err(err)?;
    let y = yao_undirected(&gd, cones.into()).map_err(err)?;
    let layers = [
        EdgeLayer::new("G^d", gd.pairs()),
        EdgeLayer::new(format!("Y_{cones}"), y.pairs()),
    ];
    Ok(json!({
        "svg": render_svg(s, &layers, true),
        "disk_edges": gd.edge_count(),
        "yao_edges": y.edge_count(),
        "components": components(&y).len(),
    }))
}

pub fn yao_view_inner(points_json: &str, k: usize, d: f64) -> Result<String, String> {
    let s = parse_points(points_json)?;
    let cones = Cones::new(k).map_err(err)?;
    Ok(view(&s, cones, d)?.to_string())
}

pub fn radius_inner(points_json: &str, k: usize, cap: f64) -> Result<String, String> {
    let s = parse_points(points_json)?;
    let res = connectivity_radius(&s, Cones::new(k).map_err(err)?, cap).map_err(err)?;
    let radius = match res.radius {
        Radius::Finite(r) => Some(r),
        Radius::UnboundedAboveCap => None,
    };
    Ok(json!({
        "radius": radius,
        "cap": res.cap,
        "candidates_examined": res.candidates_examined,
        "witness_edges": res.witness_edges.len(),
    })
    .to_string())
}

pub fn random_inner(n: usize, seed: u64, model: &str) -> Result<String, String> {
    let model: Model = model.parse().map_err(err)?;
    let s = random_connected_instance(&InstanceConfig::new(n, seed, model)).map_err(err)?;
    Ok(PointSetFile::from_point_set(&s)
        .with_metadata("model", model.name())
        .with_metadata("seed", seed)
        .to_json())
}

#[wasm_bindgen]
pub fn construct(family: &str, d: f64, eps: f64, alpha: f64, r: i32) -> Result<String, JsValue> {
    construct_inner(family, d, eps, alpha, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn yao_view(points_json: &str, k: usize, d: f64) -> Result<String, JsValue> {
    yao_view_inner(points_json, k, d).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn radius(points_json: &str, k: usize, cap: f64) -> Result<String, JsValue> {
    radius_inner(points_json, k, cap).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn random_instance(n: usize, seed: u64, model: &str) -> Result<String, JsValue> {
    random_inner(n, seed, model).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn construct_reports_a_disconnected_yao_graph() {
        let v = parse(&construct_inner("y4-lb", 1.3, f64::NAN, f64::NAN, 0).unwrap());
        assert_eq!(v["passed"], true);
        assert_eq!(v["components"], 2);
        assert!(v["svg"].as_str().unwrap().contains("<svg"));
        assert_eq!(v["points"]["points"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn construct_y2_picks_the_minimal_chain() {
        let v = parse(&construct_inner("y2-lb", 3.0, 0.1, f64::NAN, 0).unwrap());
        assert_eq!(v["params"]["r"], 3);
    }

    #[test]
    fn construct_errors_are_messages() {
        let e = construct_inner("y3-lb", 1.2, f64::NAN, f64::NAN, 0).unwrap_err();
        assert!(e.contains("sqrt(35)"));
        assert!(construct_inner("nope", 1.0, f64::NAN, f64::NAN, 0).is_err());
    }

    #[test]
    fn view_and_radius_round_trip_through_json() {
        let v = parse(&construct_inner("y4-lb", 1.3, f64::NAN, f64::NAN, 0).unwrap());
        let points = v["points"].to_string();
        let at_sqrt2 = parse(&yao_view_inner(&points, 4, 2f64.sqrt()).unwrap());
        assert_eq!(at_sqrt2["components"], 1);
        let r = parse(&radius_inner(&points, 4, 4.0).unwrap());
        let r = r["radius"].as_f64().unwrap();
        assert!(r > 1.3 && r <= 2f64.sqrt());
        assert!(yao_view_inner("{", 4, 1.0).is_err());
        assert!(radius_inner(&points, 1, 4.0).is_err());
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = random_inner(20, 3, "perturbed-grid").unwrap();
        assert_eq!(a, random_inner(20, 3, "perturbed-grid").unwrap());
        let r = parse(&radius_inner(&a, 3, 4.0).unwrap());
        assert!(r["radius"].as_f64().unwrap() <= 2.0 / 3f64.sqrt() + 1e-9);
        assert!(random_inner(20, 3, "nope").is_err());
    }
}
