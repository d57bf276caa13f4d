//! Browser bindings. Each export takes and returns plain strings; results
//! are JSON documents.
//!
//! The `*_json` functions hold the logic and run natively too; the
//! `#[wasm_bindgen]` wrappers only turn errors into JS exceptions.

use cycbent::params::{self, Params};
use cycbent::polyform::{add_to_poly, mult_to_poly};
use cycbent::{kloosterman_table, make_field, Construction, ConstructionId, FieldSpec, UnivariatePoly};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Brute force is capped at this many variables to keep the page responsive.
const MAX_ORACLE_VARS: u32 = 16;

fn build(id: &str, params: &str, field: &str) -> Result<Construction, String> {
    let id: ConstructionId = params::parse_id(id).map_err(|e| e.to_string())?;
    let field = match field.trim() {
        "" => None,
        s => Some(s.parse::<FieldSpec>().map_err(|e| e.to_string())?),
    };
    let p = Params::parse_str(params).map_err(|e| e.to_string())?;
    params::construction(id, field.as_ref(), &p).map_err(|e| e.to_string())
}

/// Predicate, and with `oracle` a brute-force Walsh check of bentness and
/// of the dual.
pub fn verify_json(id: &str, params: &str, field: &str, oracle: bool) -> Result<String, String> {
    let c = build(id, params, field)?;
    let mut out = json!({
        "construction": c.id().as_str(),
        "field": c.field().ctx().spec().to_string(),
        "predicate": c.predicate().ok(),
    });
    if let Err(e) = c.predicate() {
        out["predicate_error"] = e.to_string().into();
    }
    if oracle {
        let n = c.field().n();
        if n > MAX_ORACLE_VARS {
            return Err(format!("oracle limited to n <= {MAX_ORACLE_VARS}"));
        }
        let w = c.function().walsh();
        let bent = w.is_bent();
        let dual_match = match (bent, c.dual()) {
            (true, Ok(d)) => Some(w.dual().map(|t| t == d).unwrap_or(false)),
            _ => None,
        };
        out["oracle"] = json!({ "bent": bent, "dual_match": dual_match });
    }
    Ok(out.to_string())
}

/// `K_m(a)` for every `a ∈ GF(2^m)`, `m <= 12`.
pub fn kloosterman_json(m: u32) -> Result<String, String> {
    if !(1..=12).contains(&m) {
        return Err(format!("m = {m} out of range 1..=12"));
    }
    let ctx = make_field(m, None).map_err(|e| e.to_string())?;
    let t = kloosterman_table(&ctx);
    let rows: Vec<Value> = ctx.elements().map(|a| json!({ "a": ctx.format_elem(a), "k": t[a.0 as usize] })).collect();
    Ok(json!({ "m": m, "values": rows }).to_string())
}

fn poly_text(p: &UnivariatePoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let ctx = p.ctx();
    p.terms().map(|(e, c)| format!("{} x^{e}", ctx.format_elem(c))).collect::<Vec<_>>().join(" + ")
}

/// The polynomial form of a construction, checked pointwise.
pub fn polynomial_json(id: &str, params: &str, field: &str) -> Result<String, String> {
    let c = build(id, params, field)?;
    let f = c.function();
    let ctx = c.field().ctx().clone();
    let out = match &c {
        Construction::Kasami(k) => {
            let form = add_to_poly(&k.build());
            json!({ "form": form.expr.display(&ctx).to_string(), "equality": form.materialize() == f })
        }
        other => {
            let spec = match other {
                Construction::Dillon(d) => d.build(),
                Construction::Niho(n) => n.build(),
                Construction::Mixed(s) => s.clone(),
                Construction::Kasami(_) => unreachable!(),
            };
            let p = mult_to_poly(&spec).map_err(|e| e.to_string())?;
            json!({
                "form": format!("Tr({})", poly_text(&p)),
                "terms": p.len(),
                "equality": p.trace_form().materialize() == f,
            })
        }
    };
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn verify(id: &str, params: &str, field: &str, oracle: bool) -> Result<String, JsError> {
    verify_json(id, params, field, oracle).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn kloosterman(m: u32) -> Result<String, JsError> {
    kloosterman_json(m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn polynomial(id: &str, params: &str, field: &str) -> Result<String, JsError> {
    polynomial_json(id, params, field).map_err(|e| JsError::new(&e))
}
