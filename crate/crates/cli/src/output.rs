//! Rendering: CSV tables and the JSON envelope.
//!
//! Every JSON document has the same envelope — schema_version, command,
//! parameters (stringified inputs), payload (command-specific), timing_ms —
//! and the payload shapes are pinned by the files under `schemas/`.
//! Arbitrarily large integers (sequence terms, moduli) are rendered as
//! decimal strings so no consumer is forced through f64; structural
//! quantities (indices, windows, periods at measurable scale) stay numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use updown_core::arith::CappedValuation;
use updown_core::arnold::ArnoldTable;
use updown_core::conjectures::{ReportRow, VerificationReport};
use updown_core::periodicity::{PeriodProfile, ProfileStatus};
use updown_core::Nat;

/// Wraps a payload in the envelope and pretty-prints it.
pub fn render(
    command: &str,
    parameters: BTreeMap<String, String>,
    payload: Value,
    started: Instant,
) -> String {
    let doc = json!({
        "schema_version": "1",
        "command": command,
        "parameters": parameters,
        "payload": payload,
        "timing_ms": started.elapsed().as_millis() as u64,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

fn big(n: &Nat) -> Value {
    Value::String(n.to_string())
}

fn valuation(v: CappedValuation) -> Value {
    match v.exponent() {
        Some(e) => json!(e),
        None => Value::Null,
    }
}

fn status_str(s: ProfileStatus) -> &'static str {
    match s {
        ProfileStatus::Confirmed => "confirmed",
        ProfileStatus::Inconclusive => "inconclusive",
    }
}

fn profile_value(p: &PeriodProfile) -> Value {
    json!({
        "modulus": p.modulus.as_ref().map(|m| m.to_string()),
        "preperiod": p.preperiod,
        "period": p.period,
        "window": p.window,
        "margin": p.margin,
        "status": status_str(p.status),
        "witnesses": {
            "shorter_period_failures": p.witnesses.shorter_period_failures,
            "preperiod_failure": p.witnesses.preperiod_failure,
        },
    })
}

pub fn euler_csv(terms: &[Nat]) -> String {
    let mut out = String::from("n,value\n");
    for (n, t) in terms.iter().enumerate() {
        let _ = writeln!(out, "{n},{t}");
    }
    out
}

pub fn euler_payload(modulus: Option<&Nat>, terms: &[Nat]) -> Value {
    json!({
        "modulus": modulus.map(|q| q.to_string()),
        "terms": terms.iter().map(big).collect::<Vec<_>>(),
    })
}

pub fn entringer_csv(rows: &[Vec<Nat>]) -> String {
    let mut out = String::from("n,i,value\n");
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{},{},{v}", r + 1, c + 1);
        }
    }
    out
}

pub fn entringer_payload(modulus: Option<&Nat>, rows: &[Vec<Nat>]) -> Value {
    json!({
        "modulus": modulus.map(|q| q.to_string()),
        "rows": rows
            .iter()
            .map(|row| row.iter().map(big).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn valuations_csv(rows: &[Vec<CappedValuation>]) -> String {
    let mut out = String::from("n,i,v2\n");
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{},{},{v}", r + 1, c + 1);
        }
    }
    out
}

pub fn valuations_payload(cap: u32, rows: &[Vec<CappedValuation>]) -> Value {
    json!({
        "cap": cap,
        "rows": rows
            .iter()
            .map(|row| row.iter().map(|&v| valuation(v)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn period_csv(p: &PeriodProfile) -> String {
    let modulus = p
        .modulus
        .as_ref()
        .map(|m| m.to_string())
        .unwrap_or_default();
    format!(
        "modulus,preperiod,period,window,margin,status\n{},{},{},{},{},{}\n",
        modulus,
        p.preperiod,
        p.period,
        p.window,
        p.margin,
        status_str(p.status)
    )
}

pub fn period_payload(
    p: &PeriodProfile,
    min_margin: usize,
    expect_s: Option<usize>,
    expect_d: Option<usize>,
    matched: Option<bool>,
) -> Value {
    let expectation = if expect_s.is_some() || expect_d.is_some() {
        json!({
            "preperiod": expect_s,
            "period": expect_d,
            "matched": matched,
        })
    } else {
        Value::Null
    };
    json!({
        "min_margin": min_margin,
        "profile": profile_value(p),
        "expectation": expectation,
    })
}

pub fn arnold_csv(t: &ArnoldTable) -> String {
    let mut out = String::from("k,u\n");
    for (i, u) in t.u().iter().enumerate() {
        let _ = writeln!(out, "{},{u}", i + 1);
    }
    out
}

pub fn arnold_payload(t: &ArnoldTable) -> Value {
    json!({
        "k_max": t.cap(),
        "guard": t.guard(),
        "rows_used": t.rows_used(),
        "stable": t.stable(),
        "u": t.u(),
        "anomalies": t.anomalies(),
    })
}

pub fn ftransform_csv(terms: &[Nat]) -> String {
    let mut out = String::from("k,value\n");
    for (i, t) in terms.iter().enumerate() {
        let _ = writeln!(out, "{},{t}", i + 1);
    }
    out
}

pub fn ftransform_payload(seed: &[u64], terms: &[Nat]) -> Value {
    json!({
        "seed": seed.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "terms": terms.iter().map(big).collect::<Vec<_>>(),
    })
}

fn report_row_value(row: &ReportRow) -> Value {
    json!({
        "kind": row.kind.to_string(),
        "q": row.q,
        "prediction": row.prediction.as_ref().map(|p| json!({
            "q": p.q,
            "preperiod": p.preperiod,
            "period": p.period,
            "provenance": p.provenance.to_string(),
            "source": p.source,
        })),
        "empirical": row.empirical.as_ref().map(profile_value),
        "bounds": row.bounds.as_ref().map(|b| json!({
            "q": b.q,
            "max_preperiod": b.max_preperiod,
            "period_divisor": b.period_divisor,
            "outcome": b.outcome.to_string(),
        })),
        "crt": row.crt.as_ref().map(|c| json!({
            "q": c.q,
            "expected_preperiod": c.expected_preperiod,
            "expected_period": c.expected_period,
            "outcome": c.outcome.to_string(),
        })),
        "verdict": row.verdict.to_string(),
        "note": row.note,
        "witness_window": row.witness_window,
    })
}

pub fn verify_csv(r: &VerificationReport) -> String {
    let mut out = String::from(
        "kind,q,predicted_preperiod,predicted_period,measured_preperiod,measured_period,verdict\n",
    );
    for row in &r.rows {
        let q = row.q.map(|q| q.to_string()).unwrap_or_default();
        let (ps, pd) = row
            .prediction
            .as_ref()
            .map(|p| (p.preperiod.to_string(), p.period.to_string()))
            .unwrap_or_default();
        let (es, ed) = row
            .empirical
            .as_ref()
            .map(|e| (e.preperiod.to_string(), e.period.to_string()))
            .unwrap_or_default();
        let _ = writeln!(out, "{},{q},{ps},{pd},{es},{ed},{}", row.kind, row.verdict);
    }
    out
}

pub fn verify_payload(r: &VerificationReport) -> Value {
    json!({
        "scope": {
            "odd_limit": r.scope.odd_limit,
            "pow2_max_exp": r.scope.pow2_max_exp,
            "composite_limit": r.scope.composite_limit,
            "arnold_k_max": r.scope.arnold_k_max,
            "arnold_guard": r.scope.arnold_guard,
            "min_margin": r.scope.min_margin,
            "window_slack": r.scope.window_slack,
            "max_window": r.scope.max_window,
            "workers": r.scope.workers,
        },
        "rows": r.rows.iter().map(report_row_value).collect::<Vec<_>>(),
        "summary": {
            "total": r.summary.total,
            "matches": r.summary.matches,
            "mismatches": r.summary.mismatches,
            "inconclusive": r.summary.inconclusive,
            "defects": r.summary.defects,
        },
        "elapsed_ms": r.elapsed_ms,
    })
}
