//! `reduce` sources: two-machine makespan instances and window instances.

use std::str::FromStr;

use leveling_core::reductions::{machine_to_leveling, windows_to_chains, MachineInstance};
use leveling_core::Instance;
use serde::Deserialize;

use crate::format::{parse_instance, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    P2Cmax,
    Windows,
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "p2cmax" => Ok(Source::P2Cmax),
            "windows" => Ok(Source::Windows),
            other => Err(format!("unknown reduction source `{other}` (expected p2cmax or windows)")),
        }
    }
}

/// `{"p": [...], "arcs"?, "r"?, "d"?, "M"?}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineDoc {
    p: Vec<u64>,
    #[serde(default)]
    arcs: Vec<(usize, usize)>,
    #[serde(default)]
    r: Option<Vec<u64>>,
    #[serde(default)]
    d: Option<Vec<u64>>,
    #[serde(rename = "M", default)]
    deadline: Option<u64>,
}

fn plain(message: String) -> ParseError {
    ParseError {
        line: None,
        field: None,
        message,
    }
}

pub fn reduce(source: Source, text: &str, deadline: Option<u64>) -> Result<Instance, ParseError> {
    match source {
        Source::P2Cmax => {
            let doc: MachineDoc = serde_json::from_str(text).map_err(|e| ParseError {
                line: Some(e.line()),
                field: None,
                message: e.to_string(),
            })?;
            let m = deadline.or(doc.deadline).ok_or_else(|| ParseError {
                line: None,
                field: Some("M"),
                message: "a deadline is required (field M or --deadline)".into(),
            })?;
            let machine = MachineInstance {
                durations: doc.p,
                arcs: doc.arcs,
                release: doc.r,
                due: doc.d,
            };
            machine_to_leveling(&machine, 2, m).map_err(|e| plain(e.to_string()))
        }
        Source::Windows => {
            let mut inst = parse_instance(text)?;
            if deadline.is_some() {
                inst = inst.with_deadline(deadline).map_err(|e| plain(e.to_string()))?;
            }
            windows_to_chains(&inst).map_err(|e| plain(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2cmax_example() {
        let out = reduce(Source::P2Cmax, r#"{"p":[2,2,2],"M":3}"#, None).unwrap();
        assert_eq!((out.level(), out.deadline()), (2, Some(3)));
        assert_eq!(out.consumptions(), &[1, 1, 1]);
        assert!(reduce(Source::P2Cmax, r#"{"p":[2]}"#, None).is_err());
    }

    #[test]
    fn windows_example() {
        let text = r#"{"p":[1],"c":[1],"L":1,"r":[1],"d":[2],"M":3}"#;
        let out = reduce(Source::Windows, text, None).unwrap();
        assert_eq!(out.durations(), &[1, 1, 1]);
        assert_eq!(out.arcs(), &[(1, 0), (0, 2)]);
    }
}
