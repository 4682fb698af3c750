//! JSON report construction.
//!
//! Reports are `serde_json::Value` trees with every rational rendered as
//! a `"p/q"` string (never a float), plus `*_approx` doubles for human
//! convenience. Object keys are sorted by the default `Value` map, so
//! exact-mode output is byte-deterministic.

use serde_json::{json, Map, Value};

use crate::analyzer::{AnalysisReport, Classification, Mode, NegativeCount, SolutionCandidate};
use crate::discrimination::{CountKind, RootCountReport, SignList};
use crate::rat::{to_f64, Rat};
use crate::rootfind::Interval;

pub const REPORT_SCHEMA_VERSION: &str = "1";

fn rat_str(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn rat_list(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_str).collect())
}

fn sign_list(s: &SignList) -> Value {
    Value::Array(
        s.entries()
            .iter()
            .map(|&v| Value::Number(v.into()))
            .collect(),
    )
}

fn interval(iv: &Interval) -> Value {
    json!({
        "lo": rat_str(&iv.lo),
        "hi": rat_str(&iv.hi),
        "width_approx": to_f64(&iv.width()),
    })
}

fn header(mode: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("discrimina"));
    m.insert("version".into(), json!(crate::VERSION));
    m.insert("schema".into(), json!(REPORT_SCHEMA_VERSION));
    m.insert("mode".into(), json!(mode));
    m
}

pub fn root_count_json(report: &RootCountReport, zero_root_multiplicity: Option<usize>) -> Value {
    let mut m = header("exact");
    m.insert(
        "kind".into(),
        json!(match report.kind {
            CountKind::DistinctReal => "distinct-real-roots",
            CountKind::DistinctPositive => "distinct-positive-roots",
        }),
    );
    m.insert(
        "count_formula".into(),
        json!(match report.kind {
            CountKind::DistinctReal => "mu - 2*nu",
            CountKind::DistinctPositive => "(mu - 2*nu) / 2",
        }),
    );
    m.insert("mu".into(), json!(report.mu));
    m.insert("nu".into(), json!(report.nu));
    m.insert("count".into(), json!(report.count));
    m.insert("sign_list".into(), sign_list(&report.sign_list));
    m.insert("revised_sign_list".into(), sign_list(&report.revised));
    if let Some(k) = zero_root_multiplicity {
        m.insert("zero_root_multiplicity".into(), json!(k));
    }
    Value::Object(m)
}

fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::NoPositiveSolutions => json!({ "type": "NoPositiveSolutions" }),
        Classification::InfiniteFamily { direction } => json!({
            "type": "InfiniteFamily",
            "direction": [rat_str(&direction.0), rat_str(&direction.1)],
            "family": "c * (lambda1*phi1 + lambda2*phi2) for every c > 0",
        }),
        Classification::FiniteCount { m } => json!({ "type": "FiniteCount", "m": m }),
    }
}

fn negative_json(n: &NegativeCount) -> Value {
    match n {
        NegativeCount::Finite(k) => json!(k),
        NegativeCount::Infinite => json!("infinite"),
    }
}

fn solution_json(s: &SolutionCandidate) -> Value {
    let mut m = Map::new();
    m.insert("root".into(), interval(&s.root));
    m.insert("root_value".into(), rat_str(&s.root_value));
    m.insert("root_approx".into(), json!(to_f64(&s.root_value)));
    m.insert("lambda1".into(), rat_str(&s.lambda1));
    m.insert("lambda1_approx".into(), json!(to_f64(&s.lambda1)));
    m.insert("lambda1_enclosure".into(), interval(&s.lambda1_enclosure));
    m.insert("lambda2".into(), rat_str(&s.lambda2));
    m.insert("lambda2_approx".into(), json!(to_f64(&s.lambda2)));
    m.insert("lambda2_enclosure".into(), interval(&s.lambda2_enclosure));
    if let Some(r) = &s.residual {
        m.insert("residual".into(), rat_str(r));
        m.insert("residual_approx".into(), json!(to_f64(r)));
    }
    Value::Object(m)
}

pub fn analysis_json(report: &AnalysisReport) -> Value {
    let mode = match report.mode {
        Mode::Exact => "exact",
        Mode::Numeric => "numeric",
    };
    let mut m = header(mode);
    m.insert("n".into(), json!(report.n));
    m.insert(
        "classification".into(),
        classification_json(&report.classification),
    );
    m.insert(
        "moments".into(),
        json!({
            "a": rat_list(&report.moments.a),
            "b": rat_list(&report.moments.b),
        }),
    );
    if let Some((a_err, b_err)) = &report.moment_errors {
        m.insert(
            "moment_error_bounds".into(),
            json!({ "a": rat_list(a_err), "b": rat_list(b_err) }),
        );
    }
    if let Some(alpha) = &report.alpha {
        m.insert("alpha".into(), rat_list(alpha.as_slice()));
        m.insert(
            "alpha_approx".into(),
            Value::Array(alpha.as_slice().iter().map(|v| json!(to_f64(v))).collect()),
        );
    }
    if let Some(counts) = &report.counts {
        m.insert("m".into(), json!(counts.m));
        m.insert("even_path".into(), root_count_json(&counts.even_path, None));
        m.insert(
            "direct_path".into(),
            root_count_json(&counts.direct_path, None),
        );
    }
    if let Some(cubic) = &report.cubic {
        let inv = &cubic.invariants;
        m.insert(
            "cubic".into(),
            json!({
                "m": cubic.m,
                "conditions": cubic.conditions,
                "p": rat_str(&inv.p),
                "r": rat_str(&inv.r),
                "t": rat_str(&inv.t),
                "delta1": rat_str(&inv.delta1),
                "delta2": rat_str(&inv.delta2),
                "delta3": rat_str(&inv.delta3),
                "d_list": rat_list(&inv.d_list),
            }),
        );
    }
    if let Some(th1) = &report.theorem1 {
        m.insert(
            "n1_test".into(),
            json!({
                "a10": rat_str(&th1.a10),
                "a10_approx": to_f64(&th1.a10),
                "determinant": rat_str(&th1.determinant),
                "determinant_approx": to_f64(&th1.determinant),
                "exists": th1.exists,
            }),
        );
    }
    m.insert("negative_count".into(), negative_json(&report.negative));
    if !report.solutions.is_empty() {
        m.insert(
            "solutions".into(),
            Value::Array(report.solutions.iter().map(solution_json).collect()),
        );
    }
    m.insert("certified".into(), json!(report.certified));
    if !report.notes.is_empty() {
        m.insert(
            "notes".into(),
            Value::Array(report.notes.iter().map(|s| json!(s)).collect()),
        );
    }
    Value::Object(m)
}
