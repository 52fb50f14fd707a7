//! Reading sequence prefixes and exported traces.
//!
//! A sequence file holds one ordinal per line; `#` starts a comment and blank
//! lines are skipped. A file whose first non-blank character is `[` or `{` is
//! read as JSON instead: either an array of term strings or an object with a
//! `terms` array, which is what the exporters write.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::goodstein::{self, BaseSchedule, GoodsteinTrace};
use crate::numeral::Numeral;
use crate::ordinal::Ordinal;
use crate::slowdown::pipeline::SequencePrefix;
use crate::Natural;

/// Reads a whole file, or stdin when `path` is `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(Path::new(path)).map_err(|e| Error::Io(format!("{path}: {e}")))
    }
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('[' | '{'))
}

/// Parses every term of a sequence file without checking descent.
pub fn parse_terms(text: &str) -> Result<Vec<Ordinal>> {
    if looks_like_json(text) {
        return parse_terms_json(text);
    }
    let mut terms = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        terms.push(Ordinal::parse(line).map_err(|e| e.at_line(index + 1))?);
    }
    Ok(terms)
}

/// Line number of each nonblank, non-comment line, in order.
fn term_lines(text: &str) -> Vec<usize> {
    text.lines()
        .enumerate()
        .filter(|(_, raw)| !raw.split('#').next().unwrap_or("").trim().is_empty())
        .map(|(i, _)| i + 1)
        .collect()
}

/// Parses a sequence file into a validated raw prefix.
pub fn parse_sequence_text(text: &str) -> Result<SequencePrefix> {
    let terms = parse_terms(text)?;
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Err(err @ Error::NotDescending { index, .. }) = goodstein::check_strictly_descending(&terms) {
        if looks_like_json(text) {
            return Err(err);
        }
        return Err(err.at_line(term_lines(text)[index + 1]));
    }
    SequencePrefix::raw(terms)
}

/// [`parse_sequence_text`] on a file, or stdin for `-`.
pub fn load_sequence_file(path: &str) -> Result<SequencePrefix> {
    parse_sequence_text(&read_source(path)?)
}

fn parse_terms_json(text: &str) -> Result<Vec<Ordinal>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let items = match &value {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("terms") {
            Some(Value::Array(items)) => items,
            _ => return Err(Error::Format("expected a \"terms\" array".into())),
        },
        _ => return Err(Error::Format("expected an array of terms".into())),
    };
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => Ordinal::parse(s),
            other => Err(Error::Format(format!("expected a term string, got {other}"))),
        })
        .collect()
}

/// Reads a natural written as a JSON number or a decimal string.
pub fn json_natural(value: &Value) -> Result<Natural> {
    match value {
        Value::Number(n) => n
            .as_u64()
            .map(Natural::from)
            .ok_or_else(|| Error::Format(format!("not a natural number: {n}"))),
        Value::String(s) => s
            .parse::<Natural>()
            .map_err(|_| Error::Format(format!("not a natural number: {s:?}"))),
        other => Err(Error::Format(format!("not a natural number: {other}"))),
    }
}

fn field<'a>(value: &'a Value, key: &str) -> Result<&'a Value> {
    value
        .get(key)
        .ok_or_else(|| Error::Format(format!("missing field {key:?}")))
}

fn schedule_from_json(value: &Value) -> Result<BaseSchedule> {
    let kind = field(value, "kind")?
        .as_str()
        .ok_or_else(|| Error::Format("schedule kind must be a string".into()))?;
    let params = field(value, "params")?;
    Ok(match kind {
        "shift" => BaseSchedule::Shift(json_natural(field(params, "offset")?)?),
        "constant" => BaseSchedule::Constant(json_natural(field(params, "base")?)?),
        "table" => BaseSchedule::Table(
            field(params, "values")?
                .as_array()
                .ok_or_else(|| Error::Format("table values must be an array".into()))?
                .iter()
                .map(json_natural)
                .collect::<Result<_>>()?,
        ),
        "composed" => BaseSchedule::Composed {
            outer: Box::new(schedule_from_json(field(params, "outer")?)?),
            inner: Box::new(schedule_from_json(field(params, "inner")?)?),
        },
        other => return Err(Error::Format(format!("unknown schedule kind {other:?}"))),
    })
}

/// Rebuilds a trace from the JSON written by
/// [`export::trace_json`](crate::export::trace_json). Each step's term is
/// re-parsed at its recorded base; values and images are ignored, so a
/// tampered value cannot influence verification.
pub fn read_trace_json(text: &str) -> Result<GoodsteinTrace> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let schedule = schedule_from_json(field(&value, "schedule")?)?;
    let steps = field(&value, "steps")?
        .as_array()
        .ok_or_else(|| Error::Format("steps must be an array".into()))?
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let base = json_natural(field(step, "base")?)?;
            let term = field(step, "term")?
                .as_str()
                .ok_or_else(|| Error::Format(format!("step {i}: term must be a string")))?;
            Numeral::parse(base, term)
        })
        .collect::<Result<Vec<_>>>()?;
    if steps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let last_zero = steps.last().is_some_and(|s| s.is_zero());
    Ok(GoodsteinTrace {
        schedule,
        termination_index: last_zero.then(|| steps.len() as u64 - 1),
        terminated: last_zero,
        steps,
        truncated: None,
    })
}

/// Checks that a re-read trace really follows its schedule, step by step.
pub fn check_trace_consistency(trace: &GoodsteinTrace, expansion_cap: u64) -> Result<Option<usize>> {
    for (i, pair) in trace.steps.windows(2).enumerate() {
        let next_base = trace.schedule.at(i as u64 + 1)?;
        let expected_base = trace.schedule.at(i as u64)?;
        if *pair[0].base() != expected_base || *pair[1].base() != next_base {
            return Ok(Some(i));
        }
        let shifted = crate::numeral::base_shift(&pair[0], &next_base)?;
        let stepped = crate::numeral::decrement(&shifted, expansion_cap)?;
        if stepped != pair[1] {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_plain_prefix() {
        let p = parse_sequence_text("w*2\nw\n1").unwrap();
        let expected: Vec<Ordinal> = ["w*2", "w", "1"].iter().map(|s| Ordinal::parse(s).unwrap()).collect();
        assert_eq!(p.terms(), expected.as_slice());
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_sequence_text("# header\n\nw^w  # first\n  w + 1\n#\n3\n").unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_sequence_text("w\n# c\nw") {
            Err(Error::AtLine { line: 3, source }) => {
                assert!(matches!(*source, Error::NotDescending { index: 0, .. }))
            }
            other => panic!("{other:?}"),
        }
        match parse_sequence_text("w\n\nw^") {
            Err(Error::AtLine { line: 3, source }) => assert!(matches!(*source, Error::Syntax { .. })),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_sequence_text(""), Err(Error::EmptyInput)));
        assert!(matches!(parse_sequence_text("# only\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn json_prefixes() {
        let p = parse_sequence_text(r#"["w*2", "w", "1"]"#).unwrap();
        assert_eq!(p.len(), 3);
        let p = parse_sequence_text(r#"{"k": 3, "terms": ["2", "1"]}"#).unwrap();
        assert_eq!(p.len(), 2);
        assert!(matches!(parse_sequence_text(r#"["1", "w"]"#), Err(Error::NotDescending { .. })));
        assert!(matches!(parse_sequence_text("[1]"), Err(Error::Format(_))));
    }

    #[test]
    fn trace_round_trip() {
        let trace = goodstein::run_special(&Natural::from(3u32), 10, 1 << 20).unwrap();
        let json = crate::export::trace_json(&trace, 1 << 20);
        let back = read_trace_json(&serde_json::to_string(&json).unwrap()).unwrap();
        assert_eq!(back, trace);
        assert_eq!(check_trace_consistency(&back, 1 << 20).unwrap(), None);
    }
}
