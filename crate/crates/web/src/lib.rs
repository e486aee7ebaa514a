//! WebAssembly bindings for the quantum sl(2) part of `hopfg`.
//!
//! Every export takes plain numbers/strings and returns a JSON string, or throws
//! a string error in JavaScript.

use hopfg::integrals::GIntegral;
use hopfg::suites::Report;
use hopfg::uqsl2::{
    casimir_eigenvalue, casimir_projector, h_r, modified_dimension, parse_rational64, sl2_full_report, Sl2Family,
    Sl2Grade,
};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_R: u32 = 3;
const MAX_DENOMINATOR: i64 = 8;

fn parse_params(r: u32, alpha: &str) -> Result<Rational64, String> {
    if !(2..=MAX_R).contains(&r) {
        return Err(format!("r must be between 2 and {MAX_R}"));
    }
    let alpha = parse_rational64(alpha).map_err(|e| e.to_string())?;
    if *alpha.denom() > MAX_DENOMINATOR {
        return Err(format!("denominator of alpha must be at most {MAX_DENOMINATOR}"));
    }
    Ok(alpha)
}

#[derive(Serialize)]
struct Point {
    beta: String,
    x: f64,
    via_integral: (f64, f64),
    via_formula: (f64, f64),
    exact_match: bool,
}

#[derive(Serialize)]
struct Eigenvalue {
    weight: String,
    value: (f64, f64),
    exact: String,
    projector_nonzero: bool,
}

/// Full identity report for `U_ᾱ`, as JSON.
pub fn report_json(r: u32, alpha: &str) -> Result<String, String> {
    let alpha = parse_params(r, alpha)?;
    let fam = Sl2Family::for_alpha(r, alpha);
    let integral = GIntegral::new(&fam).map_err(|e| e.to_string())?;
    let checks = sl2_full_report(&integral, alpha).map_err(|e| e.to_string())?;
    let instance = json!({"kind": "sl2", "r": r, "alpha": alpha.to_string()});
    Ok(Report::new(instance, "sl2-full", &[], checks).to_json())
}

/// Modified dimension of `V_β` for `β = k/den`, `0 < β < 2`, `β ∉ Z`, computed
/// both from the integral and from the closed formula.
pub fn dimension_curve_json(r: u32, den: i64) -> Result<String, String> {
    parse_params(r, &format!("1/{den}"))?;
    let mut points = Vec::new();
    for k in 1..2 * den {
        let beta = Rational64::new(k, den);
        if beta.is_integer() {
            continue;
        }
        let fam = Sl2Family::for_alpha(r, beta);
        let integral = GIntegral::new(&fam).map_err(|e| e.to_string())?;
        let md = modified_dimension(&integral, beta).map_err(|e| e.to_string())?;
        points.push(Point {
            beta: beta.to_string(),
            x: k as f64 / den as f64,
            via_integral: md.via_integral.to_complex(),
            via_formula: md.via_formula.to_complex(),
            exact_match: md.via_integral == md.via_formula,
        });
    }
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

/// Casimir eigenvalues on the simple summands `V_{α+k}`, `k ∈ H_r`, of `U_ᾱ`,
/// and whether each Lagrange projector is nonzero.
pub fn spectrum_json(r: u32, alpha: &str) -> Result<String, String> {
    let alpha = parse_params(r, alpha)?;
    if alpha.is_integer() {
        return Err("alpha must not be an integer".into());
    }
    let weights: Vec<Rational64> = h_r(r).into_iter().map(|k| alpha + k).collect();
    let fam = Sl2Family::for_weights(r, &weights);
    let mut out = Vec::new();
    for beta in weights {
        let w = casimir_eigenvalue(&fam, beta);
        let l = casimir_projector(&fam, beta).map_err(|e| e.to_string())?;
        out.push(Eigenvalue {
            weight: beta.to_string(),
            value: w.to_complex(),
            exact: w.to_string(),
            projector_nonzero: l.iter().any(|x| !x.is_zero()),
        });
    }
    let grade = Sl2Grade::new(alpha);
    serde_json::to_string(&json!({"grade": grade.to_string(), "eigenvalues": out})).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn sl2_report(r: u32, alpha: &str) -> Result<String, JsValue> {
    report_json(r, alpha).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn modified_dimension_curve(r: u32, den: i32) -> Result<String, JsValue> {
    dimension_curve_json(r, den as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn casimir_spectrum(r: u32, alpha: &str) -> Result<String, JsValue> {
    spectrum_json(r, alpha).map_err(|e| JsValue::from_str(&e))
}
