//! Machine-readable verification results.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first point where a claim broke.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(n: impl TryInto<u64>, expected: impl ToString, actual: impl ToString) -> Witness {
        Witness {
            n: n.try_into().unwrap_or(u64::MAX),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub order: u64,
    pub modulus: Option<u64>,
    pub cleared_multiplier: Option<i64>,
    pub first_failure: Option<Witness>,
}

impl Check {
    /// A check that passed when `failure` is `None`.
    pub fn new(name: impl Into<String>, order: usize, failure: Option<Witness>) -> Check {
        Check {
            name: name.into(),
            status: if failure.is_some() { Status::Fail } else { Status::Pass },
            order: order as u64,
            modulus: None,
            cleared_multiplier: None,
            first_failure: failure,
        }
    }

    pub fn with_modulus(mut self, m: Option<u64>) -> Check {
        self.modulus = m;
        self
    }

    pub fn with_multiplier(mut self, c: i64) -> Check {
        self.cleared_multiplier = Some(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Compares two series below `order`, reporting the first mismatch as
/// `expected = rhs`, `actual = lhs`.
pub fn compare(lhs: &Series, rhs: &Series, order: usize) -> Option<Witness> {
    match lhs.first_difference(rhs, order) {
        Ok(None) => None,
        Ok(Some((n, a, e))) => Some(Witness::new(n, e, a)),
        Err(err) => Some(Witness::new(0u64, "comparable series", err)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl Report {
    /// Checks are kept sorted by name so output never depends on the order
    /// in which they were run.
    pub fn new(suite: impl Into<String>, mut checks: Vec<Check>, elapsed_ms: u64) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report { suite: suite.into(), checks, elapsed_ms }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn merge(suite: impl Into<String>, reports: Vec<Report>) -> Report {
        let elapsed = reports.iter().map(|r| r.elapsed_ms).sum();
        let checks = reports.into_iter().flat_map(|r| r.checks).collect();
        Report::new(suite, checks, elapsed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}  {}  [order {}", c.name, c.order);
            if let Some(m) = c.modulus {
                let _ = write!(out, ", mod {m}");
            }
            if let Some(k) = c.cleared_multiplier {
                let _ = write!(out, ", cleared x{k}");
            }
            out.push(']');
            if let Some(w) = &c.first_failure {
                let _ = write!(out, "  first failure at n={}: expected {}, got {}", w.n, w.expected, w.actual);
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "{}: {passed}/{} passed in {} ms", self.suite, self.checks.len(), self.elapsed_ms);
        out
    }
}
