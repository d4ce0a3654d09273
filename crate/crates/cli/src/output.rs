//! Rendering of coefficient tables, verification reports and corollary rows
//! in the three output formats. JSON carries big integers as decimal strings;
//! CSV column sets are fixed.

use num_bigint::BigInt;
use qmac_core::report::IdentityReport;
use serde_json::json;
use std::fmt::Write as _;

pub fn write_to(path: Option<&str>, content: &str) -> Result<(), String> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => std::fs::write(p, content).map_err(|e| format!("cannot write {p}: {e}")),
    }
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

pub fn coeffs_text(rows: &[(i64, BigInt)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>10}  coefficient", "exponent");
    for (e, c) in rows {
        let _ = writeln!(s, "{e:>10}  {c}");
    }
    s
}

pub fn coeffs_json(expr: &str, order: i64, rows: &[(i64, BigInt)]) -> String {
    let rows: Vec<_> = rows
        .iter()
        .map(|(e, c)| json!({"exponent": e, "coefficient": c.to_string()}))
        .collect();
    let v = json!({"expr": expr, "order": order, "coefficients": rows});
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
}

pub fn coeffs_csv(rows: &[(i64, BigInt)]) -> String {
    let mut s = String::from("exponent,coefficient\n");
    for (e, c) in rows {
        let _ = writeln!(s, "{e},{c}");
    }
    s
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

pub fn reports_text(reports: &[IdentityReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(
            s,
            "{:<12} {:<16} order={:<6} {:<24} mismatch={:<6} {:>5} ms{}",
            r.identity.to_string(),
            r.params_str(),
            r.order,
            r.outcome.as_str(),
            r.first_mismatch.map(|e| e.to_string()).unwrap_or_else(|| "none".into()),
            r.millis,
            r.variant.as_deref().map(|v| format!("  [{v}]")).unwrap_or_default(),
        );
    }
    s
}

pub fn reports_json(reports: &[IdentityReport]) -> String {
    format!("{}\n", serde_json::to_string_pretty(reports).expect("serializable"))
}

pub fn reports_csv(reports: &[IdentityReport]) -> String {
    let mut s = String::from("identity,params,order,outcome,first_mismatch,millis,variant\n");
    for r in reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.identity,
            params,
            r.order,
            r.outcome.as_str(),
            r.first_mismatch.map(|e| e.to_string()).unwrap_or_default(),
            r.millis,
            r.variant.as_deref().unwrap_or_default(),
        );
    }
    s
}

// ---------------------------------------------------------------------------
// corollary
// ---------------------------------------------------------------------------

pub struct CorollaryRow {
    pub m: i64,
    pub formula: BigInt,
    pub direct: BigInt,
    pub matches: bool,
}

pub fn corollary_text(note: &str, label: &str, rows: &[CorollaryRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {note}; direct series: {label}");
    let _ = writeln!(s, "{:>6}  {:>24}  {:>24}  match", "m", "formula", "direct");
    for r in rows {
        let _ = writeln!(
            s,
            "{:>6}  {:>24}  {:>24}  {}",
            r.m,
            r.formula.to_string(),
            r.direct.to_string(),
            if r.matches { "yes" } else { "NO" }
        );
    }
    s
}

pub fn corollary_json(label: &str, rows: &[CorollaryRow]) -> String {
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "formula": r.formula.to_string(),
                "direct": r.direct.to_string(),
                "match": r.matches,
            })
        })
        .collect();
    let v = json!({"series": label, "rows": rows});
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
}

pub fn corollary_csv(rows: &[CorollaryRow]) -> String {
    let mut s = String::from("m,formula,direct,match\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.m, r.formula, r.direct, r.matches);
    }
    s
}
