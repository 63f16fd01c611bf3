//! wasm-bindgen entry points for `www/index.html`. Each returns a JSON
//! string the page renders as a table.

use nodal_hilb::euler::{euler_hilb, EulerMode, FamilyParams};
use nodal_hilb::tautological::{geo_expansion_with_stats, lehn_expansion, partition_formula, FockPolynomial};
use nodal_hilb::vandermonde::{verify_discriminant_pullback, VdmFamily};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_ORDER_M: u32 = 4;
const MAX_TAUT_M: u32 = 6;

/// Euler numbers for `g = 0..=g_max`, `m = 1..=m_max`, all three modes.
#[wasm_bindgen]
pub fn euler_table(g_max: u32, gb: u32, sigma: u32, m_max: u32) -> String {
    let (g_max, m_max) = (g_max.min(20), m_max.clamp(1, 20));
    let mut rows = Vec::new();
    for g in 0..=g_max {
        for m in 1..=m_max {
            let p = FamilyParams { g, gb, sigma, m };
            let [closed, stratified, oracle] =
                [EulerMode::Closed, EulerMode::Stratified, EulerMode::Oracle].map(|mode| euler_hilb(p, mode));
            rows.push(json!({
                "g": g, "m": m,
                "closed": closed.to_string(), "stratified": stratified.to_string(), "oracle": oracle.to_string(),
                "agree": closed == stratified && stratified == oracle,
            }));
        }
    }
    json!({ "rows": rows }).to_string()
}

/// Vanishing orders of `G_i` along `Θ_I` by `|I|`.
#[wasm_bindgen]
pub fn order_table(m: u32) -> String {
    let m = m.clamp(2, MAX_ORDER_M) as usize;
    let result = VdmFamily::new(m).and_then(|fam| verify_discriminant_pullback(&fam));
    match result {
        Ok(table) => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| json!({ "i": r.i, "k": r.k, "order": r.order, "oracle": r.oracle, "printed": r.printed }))
                .collect();
            json!({ "m": m, "rows": rows, "depends_only_on_k": table.depends_only_on_k, "zero_locus_ok": table.zero_locus_ok })
                .to_string()
        }
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn terms(p: &FockPolynomial) -> Vec<Value> {
    p.terms().iter().map(|(mono, c)| json!({ "monomial": mono.to_string(), "coeff": c.to_string() })).collect()
}

/// The three expansions of the degree-`m` tautological Chern class.
#[wasm_bindgen]
pub fn tautological(m: u32) -> String {
    let m = m.clamp(1, MAX_TAUT_M);
    let (geo, stats) = geo_expansion_with_stats(m);
    let lehn = lehn_expansion(m);
    let part = partition_formula(m);
    json!({
        "m": m,
        "choice_functions": stats.choice_functions,
        "equal": geo == lehn && lehn == part,
        "terms": terms(&geo),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_render() {
        let e: Value = serde_json::from_str(&euler_table(2, 0, 1, 3)).unwrap();
        assert_eq!(e["rows"].as_array().unwrap().len(), 9);
        assert!(e["rows"].as_array().unwrap().iter().all(|r| r["agree"] == true));
        let o: Value = serde_json::from_str(&order_table(3)).unwrap();
        assert_eq!(o["zero_locus_ok"], true);
        let t: Value = serde_json::from_str(&tautological(1)).unwrap();
        assert_eq!(t["equal"], true);
        assert_eq!(t["terms"].as_array().unwrap().len(), 2);
    }
}
