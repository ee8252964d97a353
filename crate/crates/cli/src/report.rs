//! Deterministic JSON reports.

use serde::Serialize;
use serde_json::Value;

/// What was asked for, echoed into the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandEcho {
    pub verb: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub params: Params,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n_max: usize,
    pub k_max: usize,
    pub trunc: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self { n_max: 4, k_max: 9, trunc: 7 }
    }
}

/// One verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Value,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, details: impl Serialize) -> Self {
        Self {
            name: name.into(),
            passed,
            details: serde_json::to_value(details).expect("details serialize"),
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.witnesses.extend(w);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: CommandEcho,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    /// Only present when asked for; it breaks byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: CommandEcho, checks: Vec<Check>) -> Self {
        Self {
            tool: "twarrow",
            version: crate::VERSION,
            passed: checks.iter().all(|c| c.passed),
            command,
            checks,
            summary: None,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        crate::format::to_json(self)
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn summary_lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name))
            .collect()
    }
}
