//! Browser bindings. Every function takes plain strings and returns a JSON document;
//! failures come back as `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use cyclic_sieving::crystal;
use cyclic_sieving::csp::{check_main_corollary, check_refined_theorem, CspError};
use cyclic_sieving::sweep::{explore_full, explore_refined};
use cyclic_sieving::tableau::{enumerate as all_ssyt, enumerate_content};
use cyclic_sieving::{Convention, SkewShape, Tableau, WeakComposition};

/// Cap on listed tableaux; the count is always exact.
pub const LIST_LIMIT: usize = 500;

fn error(message: impl ToString) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn content(text: &str, n: usize) -> Result<Option<WeakComposition>, String> {
    if text.trim().is_empty() {
        return Ok(None);
    }
    let a = text.parse::<WeakComposition>().map_err(|e| e.to_string())?;
    if a.len() != n {
        return Err(format!("content {a} has length {}, expected n = {n}", a.len()));
    }
    Ok(Some(a))
}

#[wasm_bindgen]
pub fn enumerate(outer: &str, inner: &str, n: usize, content_text: &str) -> String {
    let run = || -> Result<Value, String> {
        let shape = SkewShape::parse(outer, inner).map_err(|e| e.to_string())?;
        let set = match content(content_text, n)? {
            Some(a) => enumerate_content(&shape, &a),
            None => all_ssyt(&shape, n),
        };
        let listed: Vec<String> = set.iter().take(LIST_LIMIT).map(Tableau::to_string).collect();
        Ok(json!({
            "shape": shape.to_string(),
            "count": set.len(),
            "tableaux": listed,
            "truncated": set.len() > LIST_LIMIT,
        }))
    };
    run().map_or_else(error, |v| v.to_string())
}

#[wasm_bindgen]
pub fn orbit(outer: &str, inner: &str, n: usize, tableau: &str) -> String {
    let run = || -> Result<Value, String> {
        let shape = SkewShape::parse(outer, inner).map_err(|e| e.to_string())?;
        let t = Tableau::parse_with_shape(&shape, tableau, n).map_err(|e| e.to_string())?;
        let orbit = crystal::orbit(&t).map_err(|e| e.to_string())?;
        let elements: Vec<Value> = orbit
            .elements
            .iter()
            .map(|e| {
                json!({
                    "tableau": e.to_string(),
                    "rows": e.rows(),
                    "inner": shape.inner().parts(),
                    "weight": e.weight().entries(),
                })
            })
            .collect();
        Ok(json!({ "size": orbit.size(), "elements": elements }))
    };
    run().map_or_else(error, |v| v.to_string())
}

/// The CSP report for the full set (empty `content_text`) or the refined union of a content.
#[wasm_bindgen]
pub fn verify(
    outer: &str,
    inner: &str,
    n: usize,
    content_text: &str,
    convention: &str,
    explore: bool,
) -> String {
    let run = || -> Result<Value, String> {
        if n == 0 {
            return Err("n must be positive".into());
        }
        let shape = SkewShape::parse(outer, inner).map_err(|e| e.to_string())?;
        let a = content(content_text, n)?;
        let convention: Option<Convention> = match convention.trim() {
            "" => None,
            c => Some(c.parse::<Convention>().map_err(|e| e.to_string())?),
        };
        let report = match a {
            Some(a) => {
                let conv = convention.unwrap_or(Convention::OneBased);
                match check_refined_theorem(&shape, &a, n, conv) {
                    Err(CspError::Gcd { .. }) if explore => explore_refined(&shape, &a, conv),
                    other => other,
                }
            }
            None => {
                let conv = convention.unwrap_or(Convention::ZeroBased);
                match check_main_corollary(&shape, n, conv) {
                    Err(CspError::Gcd { .. }) if explore => explore_full(&shape, n, conv),
                    other => other.map(|mc| mc.report),
                }
            }
        }
        .map_err(|e| e.to_string())?;
        Ok(report.to_json())
    };
    run().map_or_else(error, |v| v.to_string())
}
