//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every export returns a JSON string: `{"ok": ...}` or `{"error": "..."}`.
//! The `*_json` functions carry the logic and run natively in tests.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hok_core::fourier::{fixture, m_of_gamma, pairing_matrix, FamilyGroup, GroupKind};
use hok_core::linalg::{fmt_rational, CycloNumber};
use hok_core::q_threshold::{q_threshold_closed, q_threshold_search, regular_reduction_exists};
use hok_core::rank_lemma::{check_rank, sign_matrix, RankLemmaParams};
use hok_core::root_data::{bad_primes, build_root_datum, coxeter_number, image_lattice, isogeny_labels, RootSystemType};
use hok_core::weyl::weyl_order;

type Out = Result<Value, String>;

fn wrap(r: Out) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Root datum, lattices and q_T for every isogeny of `ty`, with regular
/// reduction evaluated at `q` when `q > 0`.
pub fn explore_json(ty: &str, q: u64) -> Out {
    let t: RootSystemType = ty.trim().parse().map_err(err)?;
    let d = build_root_datum(t.untwisted()).map_err(err)?;
    let mut isogenies = Vec::new();
    for iso in isogeny_labels(t) {
        let lat = image_lattice(t, iso).map_err(err)?;
        let r = q_threshold_search(t, iso).map_err(err)?;
        let mut row = json!({
            "isogeny": iso.to_string(),
            "index": lat.index(),
            "q_T": r.q_t,
            "witness": r.witness,
            "closed_form": q_threshold_closed(t, iso).map_err(err)?,
        });
        if q > 0 {
            let rr = regular_reduction_exists(t, iso, q).map_err(err)?;
            row["regular_reduction"] = serde_json::to_value(rr).map_err(err)?;
        }
        isogenies.push(row);
    }
    Ok(json!({
        "type": t.to_string(),
        "cartan": d.cartan,
        "positive_roots": d.positive_roots,
        "marks": d.marks,
        "coxeter_number": coxeter_number(&d),
        "bad_primes": bad_primes(t),
        "weyl_order": weyl_order(t).to_string(),
        "isogenies": isogenies,
    }))
}

/// Numeric value of a cyclotomic number, for colouring cells.
fn approx(x: &CycloNumber) -> (f64, f64) {
    let n = x.conductor() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap_or(0.0);
        let a = std::f64::consts::TAU * k as f64 / n;
        (re + c * a.cos(), im + c * a.sin())
    })
}

/// Pairing matrix on M(Γ) for `S3`, `S4`, `Z2^k`, or a fixture `M1`..`M8`.
pub fn pairing_json(name: &str) -> Out {
    let name = name.trim();
    if let Some(f) = fixture(name) {
        let m = &f.matrix;
        let cells: Vec<Vec<Value>> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let x = m.get(i, j);
                        json!({ "text": fmt_rational(x), "re": x.to_f64().unwrap_or(0.0), "im": 0.0 })
                    })
                    .collect()
            })
            .collect();
        return Ok(json!({
            "name": f.name,
            "labels": Value::Null,
            "cells": cells,
            "rank": m.rank(),
            "det": m.det().ok().map(|d| fmt_rational(&d)),
            "holds": f.holds(),
        }));
    }
    let kind: GroupKind = name.parse().map_err(err)?;
    let g = FamilyGroup::load(kind).map_err(err)?;
    let m = pairing_matrix(&g);
    let labels: Vec<String> = m_of_gamma(&g).into_iter().map(|p| p.label).collect();
    let cells: Vec<Vec<Value>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let x = m.get(i, j);
                    let (re, im) = approx(x);
                    json!({ "text": x.to_string(), "re": re, "im": im })
                })
                .collect()
        })
        .collect();
    Ok(json!({
        "name": kind.to_string(),
        "labels": labels,
        "cells": cells,
        "rank": m.rank(),
        "det": m.det().ok().map(|d| d.to_string()),
    }))
}

/// Sign matrix of the rank lemma with its rank check.
pub fn sign_matrix_json(z: u32, zp: u32, d: u32, dp: i32) -> Out {
    let p = RankLemmaParams::new(z, zp, d, dp).map_err(err)?;
    let m = sign_matrix(&p).map_err(err)?;
    let c = check_rank(&p).map_err(err)?;
    let rows: Vec<Vec<i64>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().unwrap_or(0)).collect()).collect();
    Ok(json!({ "rows": c.rows, "cols": c.cols, "rank": c.rank, "full_rank": c.passed, "matrix": rows }))
}

#[wasm_bindgen]
pub fn explore(ty: &str, q: u32) -> String {
    wrap(explore_json(ty, q as u64))
}

#[wasm_bindgen]
pub fn pairing(name: &str) -> String {
    wrap(pairing_json(name))
}

#[wasm_bindgen]
pub fn rank_lemma(z: u32, zp: u32, d: u32, dp: i32) -> String {
    wrap(sign_matrix_json(z, zp, d, dp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_shapes() {
        let v: Value = serde_json::from_str(&explore("X9", 0)).unwrap();
        assert!(v["error"].is_string());
        let v: Value = serde_json::from_str(&explore("A1", 3)).unwrap();
        assert!(v["ok"].is_object());
    }

    #[test]
    fn approx_of_zeta3() {
        let (re, im) = approx(&CycloNumber::zeta(3));
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }
}
