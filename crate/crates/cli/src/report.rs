use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "heegaard-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: Value,
}

/// Everything a run decided. `status` is the conjunction of the checks.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<Value>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            schema: REPORT_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            status: "pass",
            artifact: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, details: Value) {
        let name = name.into();
        debug_assert!(self.checks.iter().all(|c| c.name != name));
        self.checks.push(Check {
            name,
            pass,
            details,
        });
        self.status = if self.passed() { "pass" } else { "fail" };
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
