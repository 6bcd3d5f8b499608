use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CheckResult {
    pub id: String,
    pub reference: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub elapsed_millis: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Field order here is the key order of the JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Report {
    pub tool_version: String,
    pub timestamp: Option<String>,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

/// Collapses runs of whitespace so formatting differences never decide a check.
pub fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn new(suite: &str, seed: u64, timestamp: Option<String>, checks: Vec<CheckResult>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            suite: suite.to_string(),
            seed,
            checks,
            summary,
        }
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "freecsp {} suite={} seed={}", self.tool_version, self.suite, self.seed);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "{tag}  {:width$}  {}", c.id, c.computed);
            if c.status == Status::Fail {
                let _ = writeln!(out, "      {:width$}  expected: {}", "", c.expected);
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed, {} skipped",
            s.total, s.passed, s.failed, s.skipped
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(id: &str, status: Status) -> CheckResult {
        CheckResult {
            id: id.into(),
            reference: "r".into(),
            status,
            expected: "1".into(),
            computed: "1".into(),
            elapsed_millis: 0,
        }
    }

    #[test]
    fn summary_counts() {
        let r = Report::new(
            "x",
            0,
            None,
            vec![check("a", Status::Pass), check("b", Status::Fail), check("c", Status::Skipped)],
        );
        assert_eq!(r.summary, Summary { total: 3, passed: 1, failed: 1, skipped: 1 });
        assert!(!r.passed());
        assert!(r.to_text().contains("FAIL  b"));
    }

    #[test]
    fn key_order() {
        let r = Report::new("x", 7, None, vec![check("a", Status::Pass)]);
        let json = r.to_json();
        let keys = ["toolVersion", "timestamp", "suite", "seed", "checks", "summary"];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize("  a \n b\tc "), "a b c");
    }
}
