//! JSON and CSV renderings of traces, certificates and pipeline bundles.
//!
//! Every term is written as its canonical string. Naturals that fit in 64 bits
//! are JSON numbers and larger ones are decimal strings. Object keys come out
//! sorted, so output is byte-stable for a fixed input.

use std::fmt::Write;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::goodstein::{BaseSchedule, DominationCertificate, DominationRecord, GoodsteinTrace};
use crate::numeral::Numeral;
use crate::slowdown::pipeline::{
    BoundedOutput, EvidenceStatus, PipelineBundle, PrefixKind, SequencePrefix, SlowOutput, Witness,
};
use crate::{numeral, Natural};

pub fn natural_json(n: &Natural) -> Value {
    match n.to_u64() {
        Some(small) => json!(small),
        None => json!(n.to_string()),
    }
}

pub fn schedule_json(schedule: &BaseSchedule) -> Value {
    let params = match schedule {
        BaseSchedule::Shift(c) => json!({ "offset": natural_json(c) }),
        BaseSchedule::Constant(b) => json!({ "base": natural_json(b) }),
        BaseSchedule::Table(values) => json!({ "values": values.iter().map(natural_json).collect::<Vec<_>>() }),
        BaseSchedule::Composed { outer, inner } => json!({
            "outer": schedule_json(outer),
            "inner": schedule_json(inner),
        }),
    };
    json!({ "kind": schedule.kind(), "params": params })
}

fn value_json(h: &Numeral, bit_budget: u64) -> Value {
    h.value_within(bit_budget).map_or(Value::Null, |v| natural_json(&v))
}

pub fn numeral_json(h: &Numeral, bit_budget: u64) -> Value {
    json!({
        "base": natural_json(h.base()),
        "term": h.render(),
        "value": value_json(h, bit_budget),
    })
}

pub fn trace_json(trace: &GoodsteinTrace, bit_budget: u64) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, h)| {
            json!({
                "i": i,
                "base": natural_json(h.base()),
                "term": h.render(),
                "value": value_json(h, bit_budget),
                "ordinal_image": numeral::to_ordinal(h).render(),
            })
        })
        .collect();
    json!({
        "start": value_json(trace.start(), bit_budget),
        "schedule": schedule_json(&trace.schedule),
        "steps": steps,
        "terminated": trace.terminated,
        "termination_index": trace.termination_index,
        "truncated": trace.truncated.as_ref().map(|e| e.to_string()),
    })
}

pub fn trace_csv(trace: &GoodsteinTrace, bit_budget: u64) -> String {
    let mut out = String::from("i,base,value,term\n");
    for (i, h) in trace.steps.iter().enumerate() {
        let value = h
            .value_within(bit_budget)
            .map_or_else(|| "big".to_string(), |v| v.to_string());
        writeln!(out, "{i},{},{value},{}", h.base(), h.render()).expect("writing to a string");
    }
    out
}

fn record_json(r: &DominationRecord) -> Value {
    json!({
        "i": r.index,
        "base": natural_json(&r.base),
        "target": r.target.render(),
        "image": r.image.render(),
        "verdict": r.verdict.as_str(),
    })
}

pub fn certificate_json(cert: &DominationCertificate) -> Value {
    json!({
        "records": cert.records.iter().map(record_json).collect::<Vec<_>>(),
        "all_pass": cert.all_pass(),
        "first_failure": cert.first_failure(),
    })
}

pub fn certificate_csv(records: &[DominationRecord]) -> String {
    let mut out = String::from("i,base,target,image,verdict\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.index,
            r.base,
            r.target,
            r.image,
            r.verdict.as_str()
        )
        .expect("writing to a string");
    }
    out
}

pub fn prefix_json(prefix: &SequencePrefix) -> Value {
    let mut value = json!({
        "kind": prefix.kind().name(),
        "terms": prefix.terms().iter().map(|t| t.render()).collect::<Vec<_>>(),
    });
    if let PrefixKind::Slow { k } = prefix.kind() {
        value["k"] = json!(k);
    }
    value
}

pub fn slow_json(slow: &SlowOutput) -> Value {
    let mut value = prefix_json(&slow.prefix);
    value["clock"] = serde_json::to_value(&slow.clock).expect("clock serializes");
    value["offset"] = json!(slow.offset.render());
    value["initial_len"] = json!(slow.initial_len);
    value["blocks"] = slow
        .blocks
        .iter()
        .map(|b| {
            json!({
                "source": b.source,
                "start": b.start,
                "len": b.len,
                "clock_arg": b.clock_arg,
            })
        })
        .collect();
    value
}

pub fn bounded_json(bounded: &BoundedOutput) -> Value {
    let mut value = prefix_json(&bounded.prefix);
    value["s"] = json!(bounded.s);
    value["k"] = json!(bounded.k);
    value
}

fn status_json(status: &EvidenceStatus) -> Value {
    match status {
        EvidenceStatus::NoEvidence => json!({ "kind": status.as_str() }),
        EvidenceStatus::CertifiedUpToHorizon(n) => json!({ "kind": status.as_str(), "checked": n }),
        EvidenceStatus::Failed { first_index } => json!({ "kind": status.as_str(), "first_index": first_index }),
    }
}

pub fn witness_json(witness: &Witness, bit_budget: u64) -> Value {
    let cert = &witness.certificate;
    json!({
        "start": numeral_json(&witness.start, bit_budget),
        "status": status_json(&cert.status),
        "all_pass": cert.all_pass(),
        "records": cert.records.iter().map(record_json).collect::<Vec<_>>(),
    })
}

pub fn bundle_json(bundle: &PipelineBundle, bit_budget: u64) -> Value {
    json!({
        "input": prefix_json(&bundle.input),
        "level": bundle.level,
        "horizon": bundle.horizon,
        "slow": slow_json(&bundle.slow),
        "bounded": bounded_json(&bundle.bounded),
        "witness": witness_json(&bundle.witness, bit_budget),
        "checks": bundle
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "verdict": if bundle.passed() { "pass" } else { "fail" },
        "no_evidence": bundle.no_evidence(),
    })
}

/// One row per certificate index, preceded by one per stage check.
pub fn bundle_csv(bundle: &PipelineBundle) -> String {
    let mut out = String::from("section,name,index,base,target,image,verdict\n");
    for c in &bundle.checks {
        let verdict = if c.passed { "pass" } else { "fail" };
        writeln!(out, "check,{},,,,,{verdict}", c.name).expect("writing to a string");
    }
    for r in &bundle.witness.certificate.records {
        writeln!(
            out,
            "witness,m_k >= T(beta_k),{},{},{},{},{}",
            r.index,
            r.base,
            r.target,
            r.image,
            r.verdict.as_str()
        )
        .expect("writing to a string");
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodstein;
    use crate::ordinal::Ordinal;
    use crate::slowdown::{full_pipeline, GrzLevel};
    use crate::Limits;

    #[test]
    fn trace_json_shape() {
        let trace = goodstein::run_special(&Natural::from(3u32), 10, 1 << 20).unwrap();
        let v = trace_json(&trace, 64);
        assert_eq!(v["start"], json!(3));
        assert_eq!(v["schedule"], json!({ "kind": "shift", "params": { "offset": 2 } }));
        assert_eq!(v["terminated"], json!(true));
        assert_eq!(v["termination_index"], json!(5));
        let values: Vec<Value> = v["steps"].as_array().unwrap().iter().map(|s| s["value"].clone()).collect();
        assert_eq!(values, vec![json!(3), json!(3), json!(3), json!(2), json!(1), json!(0)]);
        assert_eq!(v["steps"][0]["term"], json!("b + 1"));
        assert_eq!(v["steps"][0]["ordinal_image"], json!("w + 1"));
    }

    #[test]
    fn big_values_become_strings_or_big() {
        let n = Natural::from(u64::MAX) + 1u32;
        assert_eq!(natural_json(&n), json!("18446744073709551616"));
        let trace = goodstein::run_special(&Natural::from(4u32), 3, 1 << 20).unwrap();
        assert!(trace_csv(&trace, 4).contains(",big,"));
        assert!(trace_csv(&trace, 64).starts_with("i,base,value,term\n0,2,4,b^b\n1,3,26,"));
    }

    #[test]
    fn bundle_export_is_stable() {
        let betas: Vec<Ordinal> = ["w*2", "w", "1"].iter().map(|s| Ordinal::parse(s).unwrap()).collect();
        let b1 = full_pipeline(betas.clone(), GrzLevel(2), 10, &Limits::default()).unwrap();
        let b2 = full_pipeline(betas, GrzLevel(2), 10, &Limits::default()).unwrap();
        let t1 = to_text(&bundle_json(&b1, 1 << 10));
        assert_eq!(t1, to_text(&bundle_json(&b2, 1 << 10)));
        assert_eq!(bundle_csv(&b1), bundle_csv(&b2));
        let v: Value = serde_json::from_str(&t1).unwrap();
        assert_eq!(v["verdict"], json!("pass"));
        assert_eq!(v["witness"]["records"].as_array().unwrap().len(), 10);
    }
}
