//! JSON encoding of library results, and the plain-text table renderer.

use semipos::classify::ClassReport;
use semipos::construct::{MixedSignPath, NpCaseTrace};
use semipos::genfuzz::campaign::CampaignSummary;
use semipos::preserver::{Evidence, FalsifyCertificate, PreserverVerdict, Violation};
use semipos::ratmat::format_rational;
use semipos::{RatMatrix, RatVector, Rational};
use serde_json::{json, Map, Value};

use crate::input::InputRecord;

pub fn rational(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn vector(v: &RatVector) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(a: &RatMatrix) -> Value {
    Value::Array(
        (0..a.rows())
            .map(|i| Value::Array(a.row(i).iter().map(rational).collect()))
            .collect(),
    )
}

fn opt<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map(f).unwrap_or(Value::Null)
}

pub fn inputs(records: &[InputRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| json!({ "name": r.name, "source": r.source, "sha256": r.sha256 }))
            .collect(),
    )
}

pub fn class_report(r: &ClassReport) -> Value {
    json!({
        "rows": r.rows,
        "cols": r.cols,
        "nonnegative": r.nonnegative,
        "positive": r.positive,
        "row_positive": r.row_positive,
        "monomial": r.monomial,
        "inverse_nonnegative": r.inverse_nonnegative,
        "semipositive": r.semipositive,
        "minimally_semipositive": r.minimally_semipositive,
        "semipositivity_vector": opt(r.sp_witness.as_ref(), vector),
        "inverse": opt(r.inverse.as_ref(), matrix),
        "nonnegative_left_inverse": opt(r.left_inverse.as_ref(), matrix),
    })
}

pub fn np_trace(t: &NpCaseTrace) -> Value {
    json!({
        "first_row": t.first.to_string(),
        "middle_rows": t.middle.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "last_row": t.last.to_string(),
        "v_order": t.v_order,
        "w_order": t.w_order,
    })
}

pub fn mixed_sign_path(p: &MixedSignPath) -> Value {
    match p {
        MixedSignPath::Column { column } => json!({ "kind": "column", "column": column }),
        MixedSignPath::Combination { i, j } => json!({ "kind": "combination", "i": i, "j": j }),
    }
}

fn violation(v: &Violation) -> Value {
    match v {
        Violation::Image { image } => json!({ "kind": "image", "image": matrix(image) }),
        Violation::InverseImage { preimage } => {
            json!({ "kind": "inverse-image", "preimage": matrix(preimage) })
        }
        Violation::OutsideRange => json!({ "kind": "outside-range" }),
    }
}

fn evidence(e: &Evidence) -> Value {
    match e {
        Evidence::ZeroRow { row } => json!({ "kind": "zero-row", "row": row }),
        Evidence::ProportionalColumns { direction } => {
            json!({ "kind": "proportional-columns", "direction": vector(direction) })
        }
        Evidence::Nonpositive => json!({ "kind": "nonpositive" }),
        Evidence::Singular => json!({ "kind": "singular" }),
        Evidence::VectorPair { u, z } => {
            json!({ "kind": "vector-pair", "u": vector(u), "z": vector(z) })
        }
        Evidence::Classification => json!({ "kind": "classification" }),
        Evidence::LeftNullVector { z } => json!({ "kind": "left-null-vector", "z": vector(z) }),
        Evidence::RightNullVector { y } => json!({ "kind": "right-null-vector", "y": vector(y) }),
    }
}

pub fn certificate(c: &FalsifyCertificate) -> Value {
    json!({
        "class": c.class.to_string(),
        "case": c.case.to_string(),
        "a": matrix(&c.a),
        "violation": violation(&c.violation),
        "evidence": evidence(&c.evidence),
    })
}

pub fn verdict(v: &PreserverVerdict) -> Value {
    json!({
        "status": v.status.to_string(),
        "reason": v.reason.to_string(),
        "certificate": opt(v.certificate.as_ref(), certificate),
    })
}

pub fn campaign(s: &CampaignSummary) -> Value {
    json!({
        "name": s.name,
        "seed": s.seed,
        "trials": s.trials,
        "checks": s.checks,
        "passed": s.passed,
        "failures": s.failures,
        "counts": s.counts,
    })
}

/// Human-readable rendering: nested keys become indented lines, and arrays
/// of string arrays are printed as aligned matrix rows.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<&str>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| {
            r.as_array()?
                .iter()
                .map(Value::as_str)
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => Some(
            items
                .iter()
                .map(|i| scalar(i).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => render_object(map, indent, out),
        Value::Array(items) => {
            if let Some(rows) = as_matrix(v) {
                let width = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(0);
                for r in rows {
                    let cells: Vec<String> = r.iter().map(|s| format!("{s:>width$}")).collect();
                    out.push_str(&format!("{pad}[ {} ]\n", cells.join("  ")));
                }
            } else {
                for (k, item) in items.iter().enumerate() {
                    match scalar(item) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}- [{k}]\n"));
                            render(item, indent + 4, out);
                        }
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, val) in map {
        match scalar(val) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(val, indent + 2, out);
            }
        }
    }
}
