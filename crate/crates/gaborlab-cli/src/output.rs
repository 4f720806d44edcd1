//! Result serialization: fixed-format CSV (17 significant digits, stable
//! row order) and JSON with a `command` / `params` / `results` envelope.
//! Identical inputs produce byte-identical output.

use std::fs;
use std::io;
use std::path::Path;

use gaborlab::{ConvergenceRow, FrameBounds, IdentityReport, LandscapeSample};
use serde_json::{json, Value};

/// Six-significant-digit formatting for stdout summaries, matching the
/// precision of the printed reference values; trailing zeros are trimmed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Full-precision decimal for files: 17 significant digits round-trip
/// every f64 exactly.
pub fn format_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Landscape table with header `tau_x,tau_y,A,B,cond`, rows sorted by
/// (tau_y, tau_x), full double precision.
pub fn landscape_csv(samples: &[LandscapeSample]) -> String {
    let mut rows: Vec<&LandscapeSample> = samples.iter().collect();
    rows.sort_by(|a, b| {
        a.tau
            .y
            .total_cmp(&b.tau.y)
            .then(a.tau.x.total_cmp(&b.tau.x))
    });
    let mut out = String::from("tau_x,tau_y,A,B,cond\n");
    for s in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_full(s.tau.x),
            format_full(s.tau.y),
            format_full(s.bounds.lower),
            format_full(s.bounds.upper),
            format_full(s.bounds.cond)
        ));
    }
    out
}

pub fn write_landscape_csv(samples: &[LandscapeSample], path: &Path) -> io::Result<()> {
    fs::write(path, landscape_csv(samples))
}

pub fn landscape_json(samples: &[LandscapeSample]) -> Value {
    let mut rows: Vec<&LandscapeSample> = samples.iter().collect();
    rows.sort_by(|a, b| {
        a.tau
            .y
            .total_cmp(&b.tau.y)
            .then(a.tau.x.total_cmp(&b.tau.x))
    });
    Value::Array(
        rows.into_iter()
            .map(|s| {
                json!({
                    "tau_x": s.tau.x,
                    "tau_y": s.tau.y,
                    "A": s.bounds.lower,
                    "B": s.bounds.upper,
                    "cond": s.bounds.cond,
                })
            })
            .collect(),
    )
}

pub fn bounds_csv(bounds: &FrameBounds) -> String {
    format!(
        "A,B,cond\n{},{},{}\n",
        format_full(bounds.lower),
        format_full(bounds.upper),
        format_full(bounds.cond)
    )
}

pub fn sweep_csv(rows: &[(f64, FrameBounds)]) -> String {
    let mut out = String::from("alpha,A,B,cond\n");
    for (alpha, b) in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_full(*alpha),
            format_full(b.lower),
            format_full(b.upper),
            format_full(b.cond)
        ));
    }
    out
}

pub fn sweep_json(rows: &[(f64, FrameBounds)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(alpha, b)| {
                json!({"alpha": alpha, "A": b.lower, "B": b.upper, "cond": b.cond})
            })
            .collect(),
    )
}

pub fn identities_csv(reports: &[IdentityReport]) -> String {
    let mut out = String::from("name,lhs,rhs,residual\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.name,
            format_full(r.lhs),
            format_full(r.rhs),
            format_full(r.residual)
        ));
    }
    out
}

pub fn identities_json(reports: &[IdentityReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| json!({"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "residual": r.residual}))
            .collect(),
    )
}

pub fn oracle_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("n,lambda_min,lambda_max,A_ref,B_ref\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            format_full(r.lambda_min),
            format_full(r.lambda_max),
            format_full(r.a_ref),
            format_full(r.b_ref)
        ));
    }
    out
}

pub fn oracle_json(rows: &[ConvergenceRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "lambda_min": r.lambda_min,
                    "lambda_max": r.lambda_max,
                    "A_ref": r.a_ref,
                    "B_ref": r.b_ref,
                })
            })
            .collect(),
    )
}

/// Top-level JSON envelope shared by every command.
pub fn envelope(command: &str, params: Value, results: Value) -> Value {
    json!({
        "command": command,
        "params": params,
        "results": results,
    })
}
