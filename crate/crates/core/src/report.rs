//! Check records and the machine-readable report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::fock::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub indices: Vec<i64>,
    pub status: Status,
    pub residual: Option<String>,
    pub paper_ref: String,
}

impl CheckRecord {
    pub fn new(suite: &str, name: &str, indices: Vec<i64>, outcome: Outcome, paper_ref: &str) -> Self {
        CheckRecord {
            suite: suite.to_string(),
            name: name.to_string(),
            indices,
            status: if outcome.pass { Status::Pass } else { Status::Fail },
            residual: outcome.residual,
            paper_ref: paper_ref.to_string(),
        }
    }

    /// A failed check caused by an evaluation error rather than a nonzero entry.
    pub fn error(suite: &str, name: &str, indices: Vec<i64>, err: impl std::fmt::Display, paper_ref: &str) -> Self {
        Self::new(suite, name, indices, Outcome::fail(format!("error: {err}")), paper_ref)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn sort_key(&self) -> (&str, &[i64], &str) {
        (&self.suite, &self.indices, &self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub sigma: String,
    pub star: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub conventions: Conventions,
}

impl Report {
    /// Sorts checks lexicographically by suite, then indices, then name.
    pub fn new(config: serde_json::Value, mut checks: Vec<CheckRecord>, conventions: Conventions) -> Self {
        checks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let pass = checks.iter().filter(|c| c.passed()).count();
        let fail = checks.len() - pass;
        Report { config, checks, summary: Summary { pass, fail }, conventions }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "config: {}", self.config);
        let _ = writeln!(out, "conventions: sigma={} star={}", self.conventions.sigma, self.conventions.star);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
            let _ = write!(out, "{status} {} {} [{}]", c.suite, c.name, idx.join(","));
            if let Some(r) = &c.residual {
                let _ = write!(out, " residual: {r}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "summary: {} passed, {} failed", self.summary.pass, self.summary.fail);
        out
    }
}
