//! Uniform envelope for check results, shared by the CLI text and JSON
//! output.

use serde::Serialize;
use serde_json::Value;

use crate::freealg::NcPoly;
use crate::scalar::CurvePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub point: CurvePoint,
    pub status: Status,
    /// First nonzero residual, if any.
    pub residual: Option<NcPoly>,
    /// One-line human summary.
    pub summary: String,
    pub details: Value,
}

impl CheckReport {
    pub fn new(check: &str, point: &CurvePoint, passed: bool, details: &impl Serialize) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            point: point.clone(),
            status: Status::from_bool(passed),
            residual: None,
            summary: String::new(),
            details: serde_json::to_value(details).expect("reports serialize"),
        }
    }

    pub fn with_residual(mut self, residual: Option<NcPoly>) -> Self {
        self.residual = residual;
        self
    }

    pub fn with_summary(mut self, summary: impl Into<String>) -> Self {
        self.summary = summary.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// `PASS name (q, p): summary`
    pub fn text_line(&self) -> String {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{mark} {:<11} (q, p) = ({}, {})", self.check, self.point.q(), self.point.p());
        if !self.summary.is_empty() {
            line.push_str(": ");
            line.push_str(&self.summary);
        }
        if let Some(r) = &self.residual {
            line.push_str(&format!("\n     residual: {r}"));
        }
        line
    }
}
