//! Machine- and human-readable run reports.

use serde::Serialize;
use serde_json::Value;

/// Digest of one input file.
#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Reproducibility metadata recorded with every run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RunDefaults {
    pub seed: u64,
    pub tol: f64,
    pub restarts: usize,
}

/// One named result.
#[derive(Clone, Debug, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub value: Value,
}

/// Full report of a CLI run: command, input digests, defaults, named
/// results, and warning flags (tolerance boundaries, non-convergence,
/// known narrative discrepancies).
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub defaults: RunDefaults,
    pub results: Vec<ResultEntry>,
    pub flags: Vec<String>,
}

impl Report {
    pub fn new(command: &str, defaults: RunDefaults) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            defaults,
            results: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &str, sha256: String) {
        self.inputs.push(InputDigest { path: path.to_string(), sha256 });
    }

    pub fn push(&mut self, name: &str, value: Value) {
        self.results.push(ResultEntry { name: name.to_string(), value });
    }

    pub fn flag(&mut self, message: impl Into<String>) {
        self.flags.push(message.into());
    }

    pub fn has_nonconvergence_flag(&self) -> bool {
        self.flags.iter().any(|f| f.contains("non-convergence"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for input in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", input.path, input.sha256));
        }
        out.push_str(&format!(
            "defaults: seed={} tol={:e} restarts={}\n",
            self.defaults.seed, self.defaults.tol, self.defaults.restarts
        ));
        for entry in &self.results {
            out.push_str(&format!("{}: {}\n", entry.name, render_value(&entry.value)));
        }
        for flag in &self.flags {
            out.push_str(&format!("warning: {flag}\n"));
        }
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("value serializes"),
    }
}
