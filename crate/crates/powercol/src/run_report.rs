use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use powercol_core::report::VerificationReport;

/// Everything one command produced. Serializes to a stable JSON document:
/// maps are key-sorted and wall time is only present when requested.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: String,
    pub params: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<VerificationReport>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str, input: impl Into<String>) -> Self {
        RunReport {
            tool: "powercol",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input: input.into(),
            params: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
            passed: true,
            artifacts: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn param(&mut self, name: &str, value: impl Into<Value>) {
        self.params.insert(name.to_string(), value.into());
    }

    pub fn result(&mut self, name: &str, value: impl Into<Value>) {
        self.results.insert(name.to_string(), value.into());
    }

    pub fn push(&mut self, r: VerificationReport) {
        self.passed &= r.passed();
        self.checks.push(r);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"))
    }

    /// Human-readable text: results first, then one line per report and an
    /// indented line per failed check.
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.results {
            match v {
                Value::String(s) => writeln!(out, "{k} = {s}"),
                other => writeln!(out, "{k} = {other}"),
            }
            .ok();
        }
        for r in &self.checks {
            let mark = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "[{mark}] {} {}", r.anchor, r.subject).ok();
            for c in &r.checks {
                if verbose || !c.holds {
                    let bound = c.bound.as_ref().map(|b| format!(" (bound {b})")).unwrap_or_default();
                    let witness = c.witness.as_ref().map(|w| format!(" [{w}]")).unwrap_or_default();
                    let mark = if c.holds { "ok" } else { "FAIL" };
                    writeln!(out, "    {mark} {}: {}{bound}{witness}", c.name, c.observed).ok();
                }
            }
            for n in &r.notes {
                if verbose {
                    writeln!(out, "    note: {n}").ok();
                }
            }
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} reports, {failed} failed", self.checks.len()).ok();
        }
        out
    }
}
