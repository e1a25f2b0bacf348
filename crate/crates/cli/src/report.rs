//! JSON reports: one record per check, stable key order.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub witness: Value,
    /// Wall-clock milliseconds; the only nondeterministic field.
    pub timing_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub input: String,
    pub input_digest: String,
    pub config: Value,
    pub notes: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    format!("sha256:{}", hash.iter().map(|b| format!("{b:02x}")).collect::<String>())
}

impl Report {
    pub fn new(subcommand: &str, input: &str, input_bytes: &[u8], config: Value) -> Self {
        Report {
            tool: "quadp3",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            input: input.to_string(),
            input_digest: digest(input_bytes),
            config,
            notes: Vec::new(),
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Run one check. `f` returns the verdict and its witness; an error is
    /// recorded as a failure with the message as witness.
    pub fn check<E: std::fmt::Display>(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, Value), E>) -> bool {
        let start = Instant::now();
        let (ok, witness) = match f() {
            Ok(r) => r,
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        self.checks.push(CheckRecord {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        self.passed &= ok;
        ok
    }

    /// Append the checks of `other` under `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.passed &= c.status == Status::Pass;
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every timing zeroed, for byte comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.timing_ms = 0.0;
        }
        r
    }
}

/// Serialize a library value into a witness.
pub fn witness<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("witness serializes")
}
