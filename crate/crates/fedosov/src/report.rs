//! Command output: named checks plus command-specific artifacts, rendered
//! either as text or as JSON. Witness indices are printed 1-based.

use fedosov_core::report::Check;
use fedosov_core::VerificationReport;
use serde_json::{json, Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub artifacts: Map<String, Value>,
    /// Human-readable body printed before the check list.
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn artifact(&mut self, key: &str, value: Value) {
        self.artifacts.insert(key.to_string(), value);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, r: VerificationReport) {
        self.checks.extend(r.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let witness = c.witness.as_ref().map_or(Value::Null, |w| {
                    json!({ "component": one_based(&w.component), "value": w.value })
                });
                json!({ "name": c.name, "pass": c.pass, "witness": witness })
            })
            .collect();
        json!({ "command": self.command, "checks": checks, "artifacts": Value::Object(self.artifacts.clone()) })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if !self.checks.is_empty() {
            if !self.lines.is_empty() {
                out.push('\n');
            }
            for c in &self.checks {
                out.push_str(if c.pass { "PASS  " } else { "FAIL  " });
                out.push_str(&c.name);
                if let Some(w) = &c.witness {
                    let ix: Vec<String> = one_based(&w.component).iter().map(|i| i.to_string()).collect();
                    if ix.is_empty() {
                        out.push_str(&format!("  [{}]", w.value));
                    } else {
                        out.push_str(&format!("  at ({}): {}", ix.join(","), w.value));
                    }
                }
                out.push('\n');
            }
            let passed = self.checks.iter().filter(|c| c.pass).count();
            out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        }
        out
    }
}

fn one_based(ix: &[usize]) -> Vec<usize> {
    ix.iter().map(|i| i + 1).collect()
}
