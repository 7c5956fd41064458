//! Browser demo. Each operation is a plain function returning JSON text, so
//! it runs and is tested natively; the `#[wasm_bindgen]` exports are thin
//! wrappers that fold errors into `{"error": ...}`.

use std::collections::BTreeSet;

use nqv_core::field::{format_rational, parse_rational_list};
use nqv_core::rootsys::{DynkinType, RootSystem};
use nqv_core::stability::{cone_membership, craw_wye_theta, make_theta, n_delta, ConeSpec};
use nqv_core::walls::{build_arrangement, render_slice, sign_vector, SlicePlane};
use nqv_core::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn root_system(name: &str) -> Result<RootSystem> {
    RootSystem::build(name.parse::<DynkinType>()?)
}

fn vertex_set(s: &str) -> Result<BTreeSet<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad vertex {x:?}"))))
        .collect()
}

/// All subsets of `1..count`.
fn nonzero_subsets(count: usize) -> Vec<BTreeSet<usize>> {
    (0u32..1 << (count - 1)).map(|mask| (1..count).filter(|i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

fn cones(rs: &RootSystem, n: u32) -> Vec<ConeSpec> {
    let subsets = nonzero_subsets(rs.vertex_count());
    let mut out: Vec<ConeSpec> = subsets.iter().map(|k| ConeSpec::chamber(k.iter().copied(), n)).collect();
    out.extend(subsets.iter().filter(|k| !k.is_empty()).map(|k| ConeSpec::sigma(k.iter().copied(), n)));
    out
}

/// The A₂ (or A₁) slice through `F` with every `C_K` and `σ_K` labeled:
/// `{"svg", "faces": [{"id", "sign", "labels"}]}`.
pub fn slice(dynkin: &str, n: u32) -> Result<Value> {
    let rs = root_system(dynkin)?;
    let plane = SlicePlane::default_for(&rs)?;
    let render = render_slice(&rs, n, &plane, &cones(&rs, n))?;
    let faces: Vec<Value> =
        render.faces.iter().map(|f| json!({ "id": f.id, "sign": f.sign.to_string(), "labels": f.labels })).collect();
    Ok(json!({ "svg": render.svg, "faces": faces }))
}

/// Sign vector of `θ` and the cones of the figure containing it.
pub fn classify(dynkin: &str, n: u32, entries: &str) -> Result<Value> {
    let rs = root_system(dynkin)?;
    let theta = make_theta(&rs, &n_delta(&rs, n), parse_rational_list(entries)?)?;
    let arr = build_arrangement(&rs, n)?;
    let sign = sign_vector(&arr, &theta)?;
    let mut members = Vec::new();
    for cone in std::iter::once(ConeSpec::f(n)).chain(cones(&rs, n)) {
        if cone_membership(&theta, &cone, &rs)? {
            members.push(cone.to_string());
        }
    }
    Ok(json!({
        "sign": sign.to_string(),
        "generic": sign.is_zero_free(),
        "walls": sign.zeros().iter().map(|&i| arr.hyperplanes()[i].to_string()).collect::<Vec<_>>(),
        "theta_inf": format_rational(theta.infinity()),
        "cones": members,
    }))
}

/// The explicit member of `C_K`, `K = I ∖ J`.
pub fn explicit_theta(dynkin: &str, n: u32, j: &str) -> Result<Value> {
    let rs = root_system(dynkin)?;
    let theta = craw_wye_theta(&rs, &vertex_set(j)?, n)?;
    let entries: Vec<String> = theta.entries().iter().map(format_rational).collect();
    Ok(json!({ "entries": entries, "theta_inf": format_rational(theta.infinity()) }))
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.name(), "message": e.to_string() }).to_string(),
    }
}

#[wasm_bindgen(js_name = sliceJson)]
pub fn slice_json(dynkin: &str, n: u32) -> String {
    respond(slice(dynkin, n))
}

#[wasm_bindgen(js_name = classifyJson)]
pub fn classify_json(dynkin: &str, n: u32, entries: &str) -> String {
    respond(classify(dynkin, n, entries))
}

#[wasm_bindgen(js_name = explicitThetaJson)]
pub fn explicit_theta_json(dynkin: &str, n: u32, j: &str) -> String {
    respond(explicit_theta(dynkin, n, j))
}
