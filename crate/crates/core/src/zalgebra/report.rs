use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ZError;

/// Outcome of one case run. Field names are part of the JSON format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub version: String,
    /// Asserted properties and whether they hold; an entry appears in the
    /// order it was checked in `verdict_order`.
    pub verdicts: BTreeMap<String, bool>,
    pub verdict_order: Vec<String>,
    pub tables: BTreeMap<String, Value>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl CaseReport {
    pub fn new(case: &str, seed: u64) -> Self {
        CaseReport {
            case: case.to_string(),
            params: BTreeMap::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            verdicts: BTreeMap::new(),
            verdict_order: Vec::new(),
            tables: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn verdict(&mut self, name: &str, holds: bool) {
        if self.verdicts.insert(name.to_string(), holds).is_none() {
            self.verdict_order.push(name.to_string());
        }
    }

    pub fn table(&mut self, name: &str, value: Value) {
        self.tables.insert(name.to_string(), value);
    }

    pub fn param(&mut self, name: &str, value: impl ToString) {
        self.params.insert(name.to_string(), value.to_string());
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    /// First failed verdict in check order.
    pub fn first_failure(&self) -> Option<&str> {
        self.verdict_order
            .iter()
            .find(|name| !self.verdicts[name.as_str()])
            .map(String::as_str)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(text: &str) -> Result<Self, ZError> {
        serde_json::from_str(text).map_err(|e| ZError::Report(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}\n", self.case);
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "seed {} | version {} | {}\n",
            self.seed,
            self.version,
            params.join(", ")
        );
        out.push_str("| verdict | holds |\n|---|---|\n");
        for name in &self.verdict_order {
            let _ = writeln!(out, "| {name} | {} |", if self.verdicts[name] { "yes" } else { "NO" });
        }
        for (name, value) in &self.tables {
            let _ = writeln!(out, "\n## {name}\n");
            render(&mut out, value);
        }
        if !self.timings_ms.is_empty() {
            out.push_str("\n## timings (ms)\n\n");
            for (k, v) in &self.timings_ms {
                let _ = writeln!(out, "- {k}: {v}");
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays of flat objects become tables, everything else a bullet list.
fn render(out: &mut String, value: &Value) {
    match value {
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let cols: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
            let _ = writeln!(
                out,
                "| {} |\n|{}",
                cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" | "),
                "---|".repeat(cols.len())
            );
            for row in rows {
                let cells: Vec<String> = cols.iter().map(|c| scalar(&row[c.as_str()])).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
        }
        Value::Array(items) => {
            for item in items {
                let _ = writeln!(out, "- {}", scalar(item));
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                let _ = writeln!(out, "- {k}: {}", scalar(v));
            }
        }
        other => {
            let _ = writeln!(out, "{}", scalar(other));
        }
    }
}
