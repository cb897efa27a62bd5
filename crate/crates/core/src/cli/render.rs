//! Canonical serialization. `serde_json` maps keep keys sorted, so equal
//! reports render to identical bytes.

use serde_json::Value;

use super::{CliError, Outcome};

pub fn render_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn render_outcome(outcome: &Outcome, json: bool) -> String {
    if json {
        render_json(&outcome.report)
    } else {
        outcome.text.clone()
    }
}

pub fn render_error(err: &CliError, json: bool) -> String {
    if json {
        render_json(&err.to_json())
    } else {
        format!("{err}\n")
    }
}
