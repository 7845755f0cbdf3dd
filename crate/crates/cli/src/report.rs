use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One case that is echoed in the report, with what was computed for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub index: usize,
    pub input: Value,
    pub output: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// The first few cases, whatever their outcome.
    pub samples: Vec<Case>,
    pub failures: Vec<Case>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Observations that are reported but not required to hold.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str, checks: Vec<CheckResult>, notes: Vec<String>) -> Self {
        SuiteReport { name: name.to_string(), passed: checks.iter().all(CheckResult::ok), checks, notes }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub config: Value,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable mirror; `timings` runs parallel to `suites`.
    pub fn to_text(&self, timings: &[Duration]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed {}", self.seed);
        for (i, suite) in self.suites.iter().enumerate() {
            let time = timings.get(i).map(|d| format!(" ({:.2}s)", d.as_secs_f64())).unwrap_or_default();
            let _ = writeln!(out, "{} {}{}", if suite.passed { "PASS" } else { "FAIL" }, suite.name, time);
            for c in &suite.checks {
                let _ = writeln!(out, "  {:<4} {:<48} {}/{}", if c.ok() { "ok" } else { "FAIL" }, c.name, c.passed, c.total);
                for f in c.failures.iter().take(3) {
                    let _ = writeln!(out, "       case {}: {} -> {}", f.index, f.input, f.output);
                }
            }
            for n in &suite.notes {
                let _ = writeln!(out, "  note {n}");
            }
        }
        let _ = writeln!(out, "{}", if self.passed { "all suites passed" } else { "some checks failed" });
        out
    }
}

/// Accumulates the outcomes of one check.
pub struct CheckBuilder {
    result: CheckResult,
    max_samples: usize,
}

impl CheckBuilder {
    pub fn new(name: &str) -> Self {
        CheckBuilder {
            result: CheckResult { name: name.to_string(), passed: 0, total: 0, samples: Vec::new(), failures: Vec::new() },
            max_samples: 2,
        }
    }

    pub fn record(&mut self, input: Value, output: Value, ok: bool) {
        let case = Case { index: self.result.total, input, output };
        self.result.total += 1;
        if ok {
            self.result.passed += 1;
        } else {
            self.result.failures.push(case.clone());
        }
        if self.result.samples.len() < self.max_samples {
            self.result.samples.push(case);
        }
    }

    pub fn finish(self) -> CheckResult {
        self.result
    }
}
