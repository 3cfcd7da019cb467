//! Browser bindings for the interactive demo page.
//!
//! Every export takes and returns strings: inputs are plain parameters or
//! JSON documents, outputs are JSON of the form `{"ok": ...}` or
//! `{"error": "..."}`. Keeping the surface stringly lets the same
//! functions run natively in tests and under wasm-bindgen in the page.

use wasm_bindgen::prelude::*;

use easy_diagrams_core::algebra::{AlgebraElement, SetPartitionDiagram};
use easy_diagrams_core::arrays::conjecture_check;
use easy_diagrams_core::graphs::{build_graph, BranchingGraph, GraphKind};
use easy_diagrams_core::ratio::{format_ratio, parse_ratio};
use easy_diagrams_core::traces::{lifted_diagram_trace, ThomaParameter, TraceConvention};

const MAX_GRAPH_LEVELS: usize = 12;
const MAX_SWEEP: usize = 200;
const MAX_DIAGRAM_ROW: usize = 6;

fn ok(value: serde_json::Value) -> String {
    serde_json::json!({ "ok": value }).to_string()
}

fn err(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

fn build(kind: &str, levels: usize) -> Result<BranchingGraph, String> {
    let normalized = kind.to_ascii_lowercase().replace('_', "-");
    if let Some(base) = normalized.strip_prefix("pascalized-") {
        let base = GraphKind::parse(base).map_err(|e| e.to_string())?;
        build_graph(base, levels)
            .pascalize()
            .map_err(|e| e.to_string())
    } else {
        let kind = GraphKind::parse(&normalized).map_err(|e| e.to_string())?;
        Ok(build_graph(kind, levels))
    }
}

/// Graph explorer: returns the level structure, edges (global indices) and
/// exact dimensions of a branching graph.
#[wasm_bindgen]
pub fn graph_explore(kind: &str, levels: u32) -> String {
    let levels = levels as usize;
    if levels > MAX_GRAPH_LEVELS {
        return err(format!("levels capped at {MAX_GRAPH_LEVELS} in the demo"));
    }
    match build(kind, levels) {
        Ok(graph) => ok(graph.to_json()),
        Err(e) => err(e),
    }
}

/// Conjecture sweep: verifies the K-array ratio inequalities up to `n` and
/// reports the boundary ratio sequence K(n-2,0,δ)/K(n,0,δ) as strings.
#[wasm_bindgen]
pub fn conjecture_sweep(n_max: u32) -> String {
    let n_max = n_max as usize;
    if n_max > MAX_SWEEP {
        return err(format!("sweep capped at {MAX_SWEEP} in the demo"));
    }
    if n_max < 3 {
        return err("need n >= 3");
    }
    let outcome = conjecture_check(n_max);
    // the reported maxima: exact numerator/denominator pairs per level
    let karr = easy_diagrams_core::arrays::KArray::build(n_max);
    let ratios: Vec<serde_json::Value> = (3..=n_max)
        .map(|n| {
            let delta = (n % 2) as u32;
            let top = karr.get(n - 2, 0, delta);
            let bottom = karr.get(n, 0, delta);
            serde_json::json!({
                "n": n,
                "numerator": top.to_string(),
                "denominator": bottom.to_string(),
                "approx": approx_ratio(&top, &bottom),
            })
        })
        .collect();
    ok(serde_json::json!({
        "n_max": n_max,
        "holds": outcome.holds,
        "comparisons": outcome.comparisons,
        "inequality_violation": outcome.inequality_violation.map(|(n, k, l)| vec![n as u64, k as u64, l as u64]),
        "max_identity_violation": outcome.max_identity_violation.map(|(n, k, l)| vec![n as u64, k as u64, l as u64]),
        "max_ratios": ratios,
    }))
}

// display-only float for the demo plot; all verification is exact
fn approx_ratio(
    numerator: &easy_diagrams_core::BigCount,
    denominator: &easy_diagrams_core::BigCount,
) -> f64 {
    let scale = 1_000_000_000u64;
    let scaled = numerator * scale / denominator;
    let digits = scaled.to_string();
    digits.parse::<f64>().unwrap_or(f64::NAN) / scale as f64
}

/// Diagram composer: multiplies two basis diagrams, reporting the product
/// diagram, the number of erased loops, and optionally the coefficient at
/// a rational δ.
#[wasm_bindgen]
pub fn compose_diagrams(x_blocks: &str, y_blocks: &str, delta: &str) -> String {
    let parse = |s: &str| -> Result<SetPartitionDiagram, String> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| format!("blocks: {e}"))?;
        SetPartitionDiagram::from_json(&value).map_err(|e| e.to_string())
    };
    let x = match parse(x_blocks) {
        Ok(d) => d,
        Err(e) => return err(format!("first diagram: {e}")),
    };
    let y = match parse(y_blocks) {
        Ok(d) => d,
        Err(e) => return err(format!("second diagram: {e}")),
    };
    if x.upper_count()
        .max(x.lower_count())
        .max(y.upper_count())
        .max(y.lower_count())
        > MAX_DIAGRAM_ROW
    {
        return err(format!(
            "rows capped at {MAX_DIAGRAM_ROW} points in the demo"
        ));
    }
    let (product, loops) = match x.compose(&y) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let delta_factor = if delta.trim().is_empty() {
        serde_json::Value::Null
    } else {
        match parse_ratio(delta) {
            Ok(d) => {
                let mut value = easy_diagrams_core::BigRatio::from_integer(1.into());
                for _ in 0..loops {
                    value *= &d;
                }
                serde_json::json!(format_ratio(&value))
            }
            Err(e) => return err(e),
        }
    };
    ok(serde_json::json!({
        "x": x.to_json(),
        "y": y.to_json(),
        "product": product.to_json(),
        "product_upper": product.upper_count(),
        "product_lower": product.lower_count(),
        "loops": loops,
        "invertible": product.is_invertible(),
        "delta_factor": delta_factor,
    }))
}

/// Trace evaluator: the lifted Thoma trace of a diagram-algebra element.
/// `element` is the JSON list of {diagram, coeffs}; `thoma` is
/// `{"alpha": [...], "beta": [...]}`.
#[wasm_bindgen]
pub fn trace_element(element: &str, thoma: &str, convention: &str, delta: &str) -> String {
    let element: serde_json::Value = match serde_json::from_str(element) {
        Ok(v) => v,
        Err(e) => return err(format!("element: {e}")),
    };
    let element = match AlgebraElement::from_json(&element) {
        Ok(x) => x,
        Err(e) => return err(format!("element: {e}")),
    };
    if element.k() > MAX_DIAGRAM_ROW {
        return err(format!(
            "rows capped at {MAX_DIAGRAM_ROW} points in the demo"
        ));
    }
    let thoma: serde_json::Value = match serde_json::from_str(thoma) {
        Ok(v) => v,
        Err(e) => return err(format!("thoma: {e}")),
    };
    let parameter = match ThomaParameter::from_json(&thoma) {
        Ok(t) => t,
        Err(e) => return err(e),
    };
    let convention = match TraceConvention::parse(convention) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let delta_value = if delta.trim().is_empty() {
        None
    } else {
        match parse_ratio(delta) {
            Ok(d) => Some(d),
            Err(e) => return err(e),
        }
    };
    match lifted_diagram_trace(&parameter, convention, &element, delta_value.as_ref()) {
        Ok(value) => ok(serde_json::json!({
            "value": format_ratio(&value),
            "convention": convention.name(),
        })),
        Err(e) => err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn graph_explore_returns_levels_and_dims() {
        let v = parse(&graph_explore("theta", 3));
        let levels = v["ok"]["levels"].as_array().unwrap();
        assert_eq!(levels.len(), 4);
        assert_eq!(levels[2].as_array().unwrap().len(), 3);
        assert!(v["ok"]["dims"].as_array().unwrap().len() >= 9);
        assert!(parse(&graph_explore("young", 40))["error"].is_string());
        assert!(parse(&graph_explore("nonsense", 3))["error"].is_string());
    }

    #[test]
    fn conjecture_sweep_reports_holds() {
        let v = parse(&conjecture_sweep(20));
        assert_eq!(v["ok"]["holds"], true);
        let ratios = v["ok"]["max_ratios"].as_array().unwrap();
        assert_eq!(ratios.len(), 18);
        // K(2,0,0)/K(4,0,0) = 1/4
        assert_eq!(ratios[1]["n"], 4);
        assert_eq!(ratios[1]["numerator"], "1");
        assert_eq!(ratios[1]["denominator"], "4");
    }

    #[test]
    fn compose_reports_loops_and_delta_power() {
        let v = parse(&compose_diagrams(
            "[[1,2],[-1,-2]]",
            "[[1,2],[-1,-2]]",
            "7/2",
        ));
        assert_eq!(v["ok"]["loops"], 1);
        assert_eq!(v["ok"]["delta_factor"], "7/2");
        assert_eq!(v["ok"]["invertible"], false);
    }

    #[test]
    fn trace_element_evaluates() {
        let element = r#"[{"diagram": [[1,-2],[2,-1]], "coeffs": ["1"]}]"#;
        let thoma = r#"{"alpha": ["1"], "beta": []}"#;
        let v = parse(&trace_element(element, thoma, "cycle-length", ""));
        assert_eq!(v["ok"]["value"], "1");
        // non-invertible diagrams vanish under the lift
        let cap = r#"[{"diagram": [[1,2],[-1,-2]], "coeffs": ["1"]}]"#;
        let v = parse(&trace_element(cap, thoma, "cycle-length", "5"));
        assert_eq!(v["ok"]["value"], "0");
    }
}
