//! JSON documents for instances and schedules.

use std::fmt;

use leveling_core::{Instance, InstanceError, PreemptiveSchedule, Rational, Schedule};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    p: Vec<u64>,
    c: Vec<u64>,
    #[serde(rename = "L")]
    level: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    arcs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<u64>>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    deadline: Option<u64>,
}

/// A rejected document, located by line (1-based) and field when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: Option<&'static str>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.field) {
            (Some(l), Some(fd)) => write!(f, "line {l}, field `{fd}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(fd)) => write!(f, "field `{fd}`: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn field_of(e: &InstanceError) -> &'static str {
    match e {
        InstanceError::LengthMismatch { field, .. } => field,
        InstanceError::ZeroDuration { .. } => "p",
        InstanceError::ZeroLevel => "L",
        InstanceError::ZeroDeadline => "M",
        InstanceError::ArcOutOfRange(..) | InstanceError::Cycle { .. } => "arcs",
        InstanceError::WindowTooShort { .. } => "d",
    }
}

/// Line of the first `"key"` in `text`.
fn line_of_key(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.find(&needle).map(|pos| text[..pos].matches('\n').count() + 1)
}

fn build(doc: InstanceDoc) -> Result<Instance, InstanceError> {
    Instance::new(doc.p, doc.c, doc.level)?
        .with_arcs(doc.arcs)?
        .with_release(doc.r)?
        .with_due(doc.d)?
        .with_deadline(doc.deadline)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| ParseError {
        line: Some(e.line()),
        field: None,
        message: e.to_string(),
    })?;
    build(doc).map_err(|e| {
        let field = field_of(&e);
        ParseError {
            line: line_of_key(text, field),
            field: Some(field),
            message: e.to_string(),
        }
    })
}

pub fn serialize_instance(instance: &Instance) -> String {
    let doc = InstanceDoc {
        p: instance.durations().to_vec(),
        c: instance.consumptions().to_vec(),
        level: instance.level(),
        arcs: instance.arcs().to_vec(),
        r: instance.release().map(<[u64]>::to_vec),
        d: instance.due().map(<[u64]>::to_vec),
        deadline: instance.deadline(),
    };
    serde_json::to_string(&doc).expect("instance documents always serialize")
}

pub fn schedule_json(x: &Schedule, f: u64) -> String {
    format!("{{\"x\":{},\"F\":{f}}}", json!(x.starts()))
}

fn rational_pair(q: &Rational) -> Value {
    let num = q.numer().to_i64().expect("numerator fits in i64");
    let den = q.denom().to_i64().expect("denominator fits in i64");
    json!([num, den])
}

/// `{"intervals": [[[a_num, a_den, b_num, b_den], ...], ...], "F": [num, den]}`.
pub fn preemptive_json(schedule: &PreemptiveSchedule, f: &Rational) -> String {
    let intervals: Vec<Vec<Value>> = schedule
        .intervals()
        .iter()
        .map(|ivs| {
            ivs.iter()
                .map(|iv| {
                    let (a, b) = (rational_pair(&iv.start), rational_pair(&iv.end));
                    json!([a[0], a[1], b[0], b[1]])
                })
                .collect()
        })
        .collect();
    format!("{{\"intervals\":{},\"F\":{}}}", json!(intervals), rational_pair(f))
}
