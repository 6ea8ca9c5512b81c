//! Machine-readable verification reports: one named check per pipeline
//! step, each carrying a witness sufficient for independent
//! re-verification.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub total_seconds: f64,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            schema: 1,
            command: command.to_string(),
            inputs,
            checks: Vec::new(),
            total_seconds: 0.0,
        }
    }

    pub fn push(&mut self, name: &str, status: Status, witness: Value, seconds: f64) {
        self.checks.push(Check { name: name.to_string(), status, witness, seconds });
        self.total_seconds += seconds;
    }

    /// Run a closure as a named pass/fail check, timing it.
    pub fn check<F: FnOnce() -> (bool, Value)>(&mut self, name: &str, f: F) {
        let start = Instant::now();
        let (ok, witness) = f();
        let secs = start.elapsed().as_secs_f64();
        self.push(name, if ok { Status::Pass } else { Status::Fail }, witness, secs);
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        self.push(name, Status::Skipped, Value::String(reason.to_string()), 0.0);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// One line per check, for the human-readable stream.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {} ({:.3}s)\n", c.name, c.seconds));
        }
        out.push_str(&format!(
            "{}: {} of {} checks passed\n",
            self.command,
            self.checks.iter().filter(|c| c.status == Status::Pass).count(),
            self.checks.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_semantics() {
        let mut r = Report::new("demo", Value::Null);
        r.check("ok", || (true, Value::Null));
        r.skip("later", "not requested");
        assert!(r.passed());
        r.check("bad", || (false, Value::Null));
        assert!(!r.passed());
        assert!(r.summary().contains("[FAIL] bad"));
    }
}
