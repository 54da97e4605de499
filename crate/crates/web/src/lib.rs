//! Browser bindings. Each export takes plain numbers or strings and returns a
//! JSON string; errors come back as a JS exception carrying the message.
//! The `*_json` functions hold the logic and are usable natively.

use gammalcm::certify::{self, AxisRange, Certificate, Classification, Direction, GridSpec, ScanCell};
use gammalcm::hfamily::{self, HParams};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Upper bound on scan cells per call, to keep the page responsive.
pub const MAX_SCAN_CELLS: usize = 625;
pub const MAX_POINTS: usize = 2000;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(err)
}

fn demo_grid(points: usize) -> Result<GridSpec, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points = {points} must lie in 2..={MAX_POINTS}"));
    }
    Ok(GridSpec { points, ..GridSpec::default() })
}

#[derive(Serialize)]
struct Curve {
    alpha: f64,
    y: f64,
    x: Vec<f64>,
    h: Vec<f64>,
    h_at_zero: f64,
}

/// Samples of h_{α,y} on `n` evenly spaced points of (−(y+1), x_max].
pub fn h_curve_json(alpha: f64, y: f64, x_max: f64, n: usize) -> Result<String, String> {
    let p = HParams::new(alpha, y).map_err(err)?;
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("n = {n} must lie in 2..={MAX_POINTS}"));
    }
    let lo = p.left_endpoint();
    if !(x_max.is_finite() && x_max > lo) {
        return Err(format!("x_max = {x_max} must exceed {lo}"));
    }
    let step = (x_max - lo) / n as f64;
    let x: Vec<f64> = (1..=n).map(|i| lo + i as f64 * step).collect();
    let h = x.iter().map(|&x| hfamily::h_eval(&p, x)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let h_at_zero = hfamily::h_eval(&p, 0.0).map_err(err)?;
    to_json(&Curve { alpha, y, x, h, h_at_zero })
}

#[derive(Serialize)]
struct SignRow {
    k: usize,
    /// (−1)^k [ln h]^(k)(x) at each abscissa.
    signed: Vec<f64>,
}

#[derive(Serialize)]
struct SignTable {
    x: Vec<f64>,
    rows: Vec<SignRow>,
    lcm: Certificate,
    reciprocal: Certificate,
    classification: Classification,
}

/// Signed log-derivatives of h on the certifier grid, with both
/// certificates and the resulting classification.
pub fn sign_table_json(alpha: f64, y: f64, k_max: usize, points: usize) -> Result<String, String> {
    let p = HParams::new(alpha, y).map_err(err)?;
    let grid = demo_grid(points)?;
    let x = grid.abscissae(y).map_err(err)?;
    let mut rows: Vec<SignRow> = (1..=k_max).map(|k| SignRow { k, signed: Vec::with_capacity(x.len()) }).collect();
    for &xi in &x {
        let derivs = hfamily::logh_derivs(k_max, &p, xi).map_err(err)?;
        for (row, d) in rows.iter_mut().zip(derivs) {
            row.signed.push(if row.k % 2 == 0 { d.value } else { -d.value });
        }
    }
    let lcm = certify::certify_lcm(&p, Direction::Lcm, k_max, &grid).map_err(err)?;
    let reciprocal = certify::certify_lcm(&p, Direction::Reciprocal, k_max, &grid).map_err(err)?;
    let classification = certify::classify(lcm.verdict, reciprocal.verdict);
    to_json(&SignTable { x, rows, lcm, reciprocal, classification })
}

/// Classification of every (α, y) pair; ranges are `start:end:step`.
pub fn scan_json(alpha: &str, y: &str, k_max: usize, points: usize) -> Result<String, String> {
    let alphas = alpha.parse::<AxisRange>().map_err(err)?.values().map_err(err)?;
    let ys = y.parse::<AxisRange>().map_err(err)?.values().map_err(err)?;
    if alphas.len() * ys.len() > MAX_SCAN_CELLS {
        return Err(format!("{} cells requested, at most {MAX_SCAN_CELLS} allowed", alphas.len() * ys.len()));
    }
    let cells: Vec<ScanCell> = certify::scan_alpha_y(&alphas, &ys, k_max, &demo_grid(points)?).map_err(err)?;
    to_json(&cells)
}

#[wasm_bindgen]
pub fn h_curve(alpha: f64, y: f64, x_max: f64, n: usize) -> Result<String, JsValue> {
    h_curve_json(alpha, y, x_max, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sign_table(alpha: f64, y: f64, k_max: usize, points: usize) -> Result<String, JsValue> {
    sign_table_json(alpha, y, k_max, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn scan(alpha: &str, y: &str, k_max: usize, points: usize) -> Result<String, JsValue> {
    scan_json(alpha, y, k_max, points).map_err(|e| JsValue::from_str(&e))
}
