//! JSON verification reports.

use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::config::RunConfig;

pub const SCHEMA: u32 = 1;

/// Residuals and tolerances as 17-significant-digit strings.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_sci<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&sci(*x)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ChartBased,
    AlgebraOnly,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: Status,
    #[serde(serialize_with = "opt_sci")]
    pub residual: Option<f64>,
    #[serde(serialize_with = "opt_sci")]
    pub tolerance: Option<f64>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub params: Map<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub timestamp: u64,
    pub command: String,
    pub orientation: &'static str,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

pub const ORIENTATION: &str = "vol = w1^w2^w3, eps_123 = +1, Lorentzian Hodge carries det(eta) = -1";

pub fn timestamp() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

impl Report {
    pub fn new(command: String, config: RunConfig, checks: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skip => summary.skipped += 1,
            }
        }
        Self {
            schema: SCHEMA,
            tool: "sqk",
            version: env!("CARGO_PKG_VERSION"),
            timestamp: timestamp(),
            command,
            orientation: ORIENTATION,
            config,
            checks,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_strings() {
        assert_eq!(sci(1.0), "1.0000000000000000e0");
        assert_eq!(sci(-0.25), "-2.5000000000000000e-1");
        // 17 digits expose the binary value and parse back exactly
        assert_eq!(sci(2.5e-7), "2.4999999999999999e-7");
        for v in [1e-6, 0.1, 6.2, -13.0, 1.0 / 3.0] {
            assert_eq!(sci(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn summary_counts() {
        let mk = |status| CheckResult {
            id: "x",
            statement: "",
            status,
            residual: Some(0.5),
            tolerance: None,
            provenance: Provenance::AlgebraOnly,
            reason: None,
            params: Map::new(),
        };
        let r = Report::new("verify".into(), RunConfig::default(), vec![mk(Status::Pass), mk(Status::Skip), mk(Status::Fail)]);
        assert_eq!(r.summary, Summary { passed: 1, failed: 1, skipped: 1 });
        assert!(!r.passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["checks"][0]["residual"], "5.0000000000000000e-1");
        assert_eq!(v["checks"][1]["status"], "skip");
    }
}
