//! Browser bindings for the demo page in `www/`. Every entry point returns a JSON string;
//! failures come back as `{"error": ...}`.

use levo::corpus::{constant_sheaf, TwoPlanes};
use levo::cycles::AbGroup;
use levo::diagnostics::{euler_check, isolating_certificate, CertStatus};
use levo::gecc::{build_gecc, SheafSpec};
use levo::pipeline::{check_report, parse_config, resolve};
use levo::poly::{q, PolyRing};
use levo::vogel::levo;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use wasm_bindgen::prelude::*;

/// Largest exponent the sliders may set; beyond this the page stops being interactive.
pub const MAX_EXPONENT: u32 = 6;

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn table_json(t: &BTreeMap<i64, Vec<AbGroup>>) -> Value {
    t.iter()
        .map(|(k, v)| (k.to_string(), v.iter().map(|m| m.to_string()).collect::<Vec<_>>().into()))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn status_name(s: CertStatus) -> Value {
    serde_json::to_value(s).expect("serializable")
}

pub fn two_planes_value(alpha: u32, beta: u32, gamma: u32, delta: u32, tau: u32) -> Result<Value, String> {
    if [alpha, beta, gamma, delta, tau].iter().any(|&e| !(2..=MAX_EXPONENT).contains(&e)) {
        return Err(format!("exponents must lie in 2..={}", MAX_EXPONENT));
    }
    let fam = TwoPlanes::new(alpha, beta, gamma, delta, tau);
    let r = TwoPlanes::ring();
    let g = build_gecc(&r, &SheafSpec::Strata(TwoPlanes::strata(&r)), &mut Vec::new()).map_err(|e| e.to_string())?;
    let res = levo(&r, &g, &fam.f(&r), &[q(0), q(0), q(0), q(0)], 1).map_err(|e| e.to_string())?;
    let t = res.module_table();
    let e = euler_check(&t, Some(-fam.reduced_euler()));
    Ok(json!({
        "f": fam.f_text(),
        "modules": table_json(&t),
        "d": res.d,
        "euler": { "raw": e.raw, "milnor_reduced": e.milnor_reduced, "closed_form": fam.reduced_euler(), "matches": e.matches },
    }))
}

pub fn milnor_value(variables: &str, f: &str) -> Result<Value, String> {
    let names: Vec<String> =
        variables.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(String::from).collect();
    if names.is_empty() {
        return Err("no variables".into());
    }
    let r = PolyRing::cotangent_of(names.clone()).map_err(|e| e.to_string())?;
    let f = r.base_ring().parse(f).map_err(|e| e.to_string())?;
    let p = vec![q(0); names.len()];
    let run = levo(&r, &constant_sheaf(&r), &f, &p, 1);
    let cert = isolating_certificate(&r.base_ring(), &run, &p);
    let res = run.map_err(|e| e.to_string())?;
    let t = res.module_table();
    let top = names.len() as i64;
    // an isolated critical point has its whole vanishing cohomology in lambda^0
    let milnor = (res.d <= 0).then(|| t.get(&top).map_or(0, |v| v[0].rank));
    Ok(json!({
        "modules": table_json(&t),
        "d": res.d,
        "milnor_number": milnor,
        "certificate": status_name(cert.status),
    }))
}

pub fn certify_value(job: &str) -> Result<Value, String> {
    let cfg = parse_config(job).map_err(|e| e.to_string())?;
    let job = resolve(&cfg).map_err(|e| e.to_string())?;
    let (mut json, text, _) = check_report(&job).map_err(|e| e.to_string())?;
    json["text"] = text.into();
    Ok(json)
}

/// λ modules and the Euler value for one member of the two-planes family.
#[wasm_bindgen]
pub fn two_planes(alpha: u32, beta: u32, gamma: u32, delta: u32, tau: u32) -> String {
    finish(two_planes_value(alpha, beta, gamma, delta, tau))
}

/// Milnor number and λ modules of `f` at the origin, constant sheaf.
#[wasm_bindgen]
pub fn milnor(variables: &str, f: &str) -> String {
    finish(milnor_value(variables, f))
}

/// Transversality and isolating certificate for a job description.
#[wasm_bindgen]
pub fn certify(job: &str) -> String {
    finish(certify_value(job))
}
