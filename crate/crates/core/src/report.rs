//! Structured verification outcomes.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verified identity: exact or numeric mode, pass/fail, worst residual
/// for numeric checks, and a witness (offending term) on failure.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub detail: String,
    pub mode: CheckMode,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u128,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn exact(id: &str, detail: &str, ok: bool, witness: Option<String>) -> Check {
        Check {
            id: id.to_string(),
            detail: detail.to_string(),
            mode: CheckMode::Exact,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            error_max: None,
            witness: if ok { None } else { witness },
            elapsed_ms: 0,
        }
    }

    pub fn numeric(id: &str, detail: &str, residual: f64, tol: f64) -> Check {
        Check {
            id: id.to_string(),
            detail: detail.to_string(),
            mode: CheckMode::Numeric,
            status: if residual < tol {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            error_max: Some(residual),
            witness: None,
            elapsed_ms: 0,
        }
    }

    pub fn timed(mut self, started: Instant) -> Check {
        self.elapsed_ms = started.elapsed().as_millis();
        self
    }
}

/// A batch of checks with the tool version and the configuration echo.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(config: serde_json::Value, mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks,
            passed,
            failed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}
