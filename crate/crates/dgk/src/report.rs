//! Machine-readable verification reports.

use std::fmt::Write as _;
use std::time::Duration;

use dgk_core::evidence::Check;
use serde::{Deserialize, Serialize};

use crate::format::{Document, MatrixJson, ProfileJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// The failing instance, the offending vector and, when available, a file
/// that reproduces the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub instance: String,
    pub check: String,
    pub message: String,
    pub vector: Vec<String>,
    /// the reproducer was simplified while the failure persisted
    pub shrunk: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<Document>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Bundle>,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A single core check, reported under `name`.
    pub fn from_check(name: impl Into<String>, instance: &str, c: &Check) -> Self {
        CheckEntry {
            name: name.into(),
            status: Status::of(c.passed),
            detail: c.detail.clone(),
            counterexample: c.counterexample.as_ref().map(|cx| Bundle {
                instance: instance.to_string(),
                check: c.name.clone(),
                message: cx.message.clone(),
                vector: cx.vector.clone(),
                shrunk: false,
                reproducer: None,
            }),
        }
    }
}

/// A matrix produced by a command, such as `theta` for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub instance: String,
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    /// accumulated time per check, in report order
    pub checks: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileJson>,
    pub instance_refs: Vec<String>,
    pub checks: Vec<CheckEntry>,
    #[serde(default)]
    pub artifacts: Vec<Artifact>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub timing: Timing,
}

pub fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            seed: None,
            profile: None,
            instance_refs: Vec::new(),
            checks: Vec::new(),
            artifacts: Vec::new(),
            notes: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn push(&mut self, entry: CheckEntry, elapsed: Duration) {
        self.timing.checks.push((entry.name.clone(), millis(elapsed)));
        self.checks.push(entry);
    }

    /// Sets the overall status from the checks and the total time.
    pub fn finish(&mut self, total: Duration) {
        self.status = Status::of(self.checks.iter().all(CheckEntry::passed));
        self.timing.total_ms = millis(total);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The JSON with the `timing` object removed; equal for equal inputs.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Some(o) = v.as_object_mut() {
            o.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("values serialize")
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        for c in &self.checks {
            let tag = if c.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(s, "[{tag}] {}: {}", c.name, c.detail);
            if let Some(b) = &c.counterexample {
                let _ = writeln!(s, "       at {} ({}): {}", b.instance, b.check, b.message);
                if !b.vector.is_empty() {
                    let _ = writeln!(s, "       vector [{}]", b.vector.join(", "));
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(
            s,
            "{}: {} of {} checks passed, {} instance(s), {:.1} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len() - failed,
            self.checks.len(),
            self.instance_refs.len(),
            self.timing.total_ms
        );
        s
    }
}
