//! Deterministic check reports shared by the suites and the CLI.
//!
//! The structured form is a stable, versioned schema; under a fixed seed the
//! serialized output is bit-identical across runs, so reports can be diffed
//! in CI. Wall-clock timing is kept out of the structured form for that
//! reason and only shown in the text rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

pub const REPORT_SCHEMA: &str = "dpath-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Where a check's expected value comes from: a pinned exact fixture, an
/// independently computed oracle, or an algebraic law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Fixture,
    Oracle,
    Law,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub origin: Origin,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: Option<u64>) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            suite: suite.into(),
            seed,
            status: Status::Pass,
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass)
    }

    fn push(&mut self, record: CheckRecord) {
        if !record.pass {
            self.status = Status::Fail;
        }
        self.checks.push(record);
    }

    /// Records an equality check.
    pub fn check_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        name: impl Into<String>,
        origin: Origin,
        expected: T,
        actual: T,
    ) {
        let pass = expected == actual;
        self.push(CheckRecord {
            name: name.into(),
            origin,
            expected: Some(expected.to_string()),
            actual: actual.to_string(),
            pass,
        });
    }

    /// Records a boolean check with a detail message.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        origin: Origin,
        pass: bool,
        detail: impl Into<String>,
    ) {
        self.push(CheckRecord {
            name: name.into(),
            origin,
            expected: None,
            actual: detail.into(),
            pass,
        });
    }

    /// Records an informational line that cannot fail.
    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(CheckRecord {
            name: name.into(),
            origin: Origin::Fixture,
            expected: None,
            actual: detail.into(),
            pass: true,
        });
    }

    /// Marks the whole report as errored with a final record.
    pub fn error(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(CheckRecord {
            name: name.into(),
            origin: Origin::Law,
            expected: None,
            actual: detail.into(),
            pass: false,
        });
        self.status = Status::Error;
    }

    /// Merges another report's checks under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.push(c);
        }
        if matches!(other.status, Status::Error) {
            self.status = Status::Error;
        }
        self.elapsed += other.elapsed;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            match &c.expected {
                Some(e) if !c.pass => {
                    let _ = writeln!(
                        out,
                        "{mark} {}  expected {} | actual {}",
                        c.name, e, c.actual
                    );
                }
                _ => {
                    let _ = writeln!(out, "{mark} {}  {}", c.name, c.actual);
                }
            }
        }
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(
            out,
            "suite {}: {status} ({} checks, {:.1} ms)",
            self.suite,
            self.checks.len(),
            self.elapsed.as_secs_f64() * 1e3
        );
        out
    }
}
