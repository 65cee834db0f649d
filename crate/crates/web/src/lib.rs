//! Browser bindings. Every export returns a JSON string, errors come back as a message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use skein_core::gauss;
use skein_core::handlebody::BasisTriple;

const PRECISION: usize = 128;

const MAX_LABEL: i64 = 12;
const MAX_LEVEL: u64 = 401;
const MAX_N: u64 = 20_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Coordinates of the triple `(a, b, c)` on the generators.
#[wasm_bindgen]
pub fn reduce(a: i32, b: i32, c: i32) -> Result<String, String> {
    let t = BasisTriple::new(a as i64, b as i64, c as i64).map_err(err)?;
    if (t.a.max(t.c) as i64) > MAX_LABEL {
        return Err(format!("labels above {MAX_LABEL} are disabled in the browser"));
    }
    let r = skein_core::reduction::reduce(t).map_err(err)?;
    let terms: Vec<Value> = r
        .as_vector()
        .iter()
        .map(|(g, c)| json!({"generator": g.to_string(), "coeff": c.to_string()}))
        .collect();
    Ok(json!({"triple": t.to_string(), "class": t.h1_class(), "terms": terms}).to_string())
}

/// Sign scan rows for odd `r` in `[r_min, r_max]`.
#[wasm_bindgen]
pub fn sign_scan(r_min: u32, r_max: u32) -> Result<String, String> {
    if r_max as u64 > MAX_LEVEL {
        return Err(format!("r above {MAX_LEVEL} is disabled in the browser"));
    }
    let (lo, hi) = (r_min as u64 | 1, r_max as u64 | 1);
    if lo < 3 || lo > hi {
        return Err(format!("empty range [{r_min}, {r_max}]"));
    }
    let mut rows = Vec::new();
    for r in (lo..=hi).step_by(2) {
        let row = gauss::scan_row(r, PRECISION, gauss::DEFAULT_THRESHOLD).map_err(err)?;
        rows.push(json!({
            "r": row.r,
            "rmod16": row.r_mod_16,
            "re": row.re,
            "im": row.im,
            "im_shifted": row.im_shifted,
            "sign": row.sign,
        }));
    }
    Ok(Value::Array(rows).to_string())
}

/// Partial sums of `2/sqrt(N) Σ e^{2πik²/N}` together with Lehmer's disk.
#[wasm_bindgen]
pub fn gauss_path(n: u32, m_max: u32) -> Result<String, String> {
    let n = n as u64;
    if n > MAX_N {
        return Err(format!("N above {MAX_N} is disabled in the browser"));
    }
    let path = gauss::gauss_path(n, m_max as u64, PRECISION).map_err(err)?;
    let circle = gauss::lehmer_circle(n);
    Ok(json!({
        "points": path,
        "center": [circle.center.0, circle.center.1],
        "radius": circle.radius,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn reduce_generator() {
        let v = parse(&reduce(1, 0, 1).unwrap());
        assert_eq!(v["terms"][0]["generator"], "(1,0,1)");
        assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn reduce_rejects() {
        assert!(reduce(1, 1, 1).is_err());
        assert!(reduce(-2, 0, 0).is_err());
        assert!(reduce(40, 0, 0).is_err());
    }

    #[test]
    fn scan_rows() {
        let v = parse(&sign_scan(17, 49).unwrap());
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 17);
        let r33 = rows.iter().find(|r| r["r"] == 33).unwrap();
        assert_eq!(r33["sign"], 1);
        let r41 = rows.iter().find(|r| r["r"] == 41).unwrap();
        assert_eq!(r41["sign"], -1);
        assert!(sign_scan(9, 5).is_err());
        assert!(sign_scan(3, 1001).is_err());
    }

    #[test]
    fn path_inside_disk() {
        let v = parse(&gauss_path(256, 64).unwrap());
        let pts = v["points"].as_array().unwrap();
        assert_eq!(pts.len(), 65);
        assert!(v["radius"].as_f64().unwrap() > 0.0);
        assert!(gauss_path(0, 4).is_err());
    }
}
