use std::fmt::Write;

use serde::{Deserialize, Serialize};

/// Witnesses kept per check.
pub const MAX_WITNESSES: usize = 8;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub trials: u64,
    pub failures: u64,
    /// Trials whose inputs could not be drawn or fell on an excluded case.
    pub skips: u64,
    pub worst_residual: f64,
    pub tolerance: f64,
    /// Replayable descriptions of failing inputs, at most [`MAX_WITNESSES`].
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, tolerance: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            trials: 0,
            failures: 0,
            skips: 0,
            worst_residual: 0.0,
            tolerance,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// One trial judged by its residual; NaN counts as a failure.
    pub fn record(&mut self, residual: f64, witness: impl FnOnce() -> String) {
        self.trials += 1;
        let r = if residual.is_nan() { f64::INFINITY } else { residual.abs() };
        self.worst_residual = self.worst_residual.max(r);
        if r > self.tolerance {
            self.push_failure(witness);
        }
    }

    /// One pass/fail trial without a residual.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.push_failure(witness);
        }
    }

    pub fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.check(false, witness);
    }

    pub fn skip(&mut self) {
        self.skips += 1;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn push_failure(&mut self, witness: impl FnOnce() -> String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }

    /// `key=value` record, one line per field and witness.
    pub fn to_record(&self) -> String {
        let mut s = String::new();
        writeln!(s, "check={}", self.name).unwrap();
        writeln!(s, "status={}", if self.passed() { "pass" } else { "fail" }).unwrap();
        writeln!(s, "trials={}", self.trials).unwrap();
        writeln!(s, "failures={}", self.failures).unwrap();
        writeln!(s, "skips={}", self.skips).unwrap();
        writeln!(s, "worst_residual={:e}", self.worst_residual).unwrap();
        writeln!(s, "tolerance={:e}", self.tolerance).unwrap();
        for w in &self.witnesses {
            writeln!(s, "witness={w}").unwrap();
        }
        for n in &self.notes {
            writeln!(s, "note={n}").unwrap();
        }
        s
    }
}

/// All check reports of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "seed={}", self.seed).unwrap();
        writeln!(s, "checks={}", self.checks.len()).unwrap();
        writeln!(s, "status={}", if self.all_passed() { "pass" } else { "fail" }).unwrap();
        for c in &self.checks {
            s.push('\n');
            s.push_str(&c.to_record());
        }
        s
    }
}
