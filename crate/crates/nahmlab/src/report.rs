//! Machine-readable verification reports.

use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Mismatch {
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    /// `pass`, `fail`, or `error`.
    pub status: String,
    pub depth: String,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub tool_version: String,
    pub config_hash: String,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization")
    }

    /// One line per check plus a summary, for terminal use.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {} (config {})\n", self.suite, self.config_hash));
        for c in &self.checks {
            let mark = match c.status.as_str() {
                "pass" => "PASS",
                "fail" => "FAIL",
                _ => "ERR ",
            };
            out.push_str(&format!(
                "  [{mark}] {:<40} depth {:<8} {:>6} ms",
                c.id, c.depth, c.elapsed_ms
            ));
            if let Some(m) = &c.mismatch {
                out.push_str(&format!(
                    "  first mismatch at q^({}): {} vs {}",
                    m.exponent, m.lhs, m.rhs
                ));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!("  {d}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "  {} passed, {} failed, {} errors\n",
            self.passed, self.failed, self.errors
        ));
        out
    }
}

/// Outcome of a single check body (timing and ids handled by the runner).
#[derive(Debug, Clone)]
pub enum CheckResult {
    Pass,
    PassWithDetail(String),
    Fail {
        mismatch: Option<Mismatch>,
        detail: Option<String>,
    },
}

impl CheckResult {
    pub fn fail_msg(detail: impl Into<String>) -> Self {
        CheckResult::Fail {
            mismatch: None,
            detail: Some(detail.into()),
        }
    }
}

pub fn outcome_to_result(outcome: crate::series::CompareOutcome) -> CheckResult {
    match outcome {
        crate::series::CompareOutcome::Equal => CheckResult::Pass,
        crate::series::CompareOutcome::Mismatch { exponent, lhs, rhs } => CheckResult::Fail {
            mismatch: Some(Mismatch {
                exponent: exponent.to_string(),
                lhs,
                rhs,
            }),
            detail: None,
        },
    }
}
