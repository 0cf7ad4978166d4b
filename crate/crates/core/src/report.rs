//! Pass/fail reports for the verification pipelines.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    /// Exact residual for equality checks; "0" for boolean checks.
    pub residual: String,
}

impl CheckResult {
    /// An equality-style check: passes iff the residual is exactly zero.
    pub fn residual_check(
        name: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        residual: impl Into<String>,
        residual_is_zero: bool,
    ) -> Self {
        CheckResult {
            name: name.into(),
            passed: residual_is_zero,
            expected: expected.into(),
            actual: actual.into(),
            residual: residual.into(),
        }
    }

    /// A boolean check; the residual is recorded as "0".
    pub fn boolean_check(
        name: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        passed: bool,
    ) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            expected: expected.into(),
            actual: actual.into(),
            residual: "0".into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PhaseTiming {
    pub phase: String,
    pub millis: u128,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub checks: Vec<CheckResult>,
    pub timings: Vec<PhaseTiming>,
}

impl Report {
    pub fn from_checks(checks: Vec<CheckResult>) -> Self {
        let status = if checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            status,
            checks,
            timings: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn push_timing(&mut self, phase: impl Into<String>, millis: u128) {
        self.timings.push(PhaseTiming {
            phase: phase.into(),
            millis,
        });
    }

    /// Concatenate another report's checks and timings.
    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.timings.extend(other.timings);
        if self.checks.iter().all(|c| c.passed) {
            self.status = Status::Pass;
        } else {
            self.status = Status::Fail;
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
