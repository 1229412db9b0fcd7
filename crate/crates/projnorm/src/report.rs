//! Run configuration, per-check reports and seeded substreams.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Settings shared by every check of one invocation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub points: usize,
    pub tol: f64,
    pub order: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, points: 100, tol: 1e-9, order: 4 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParams(format!("tol must be positive, got {}", self.tol)));
        }
        if self.points == 0 {
            return Err(Error::InvalidParams("points must be at least 1".into()));
        }
        if !(1..=6).contains(&self.order) {
            return Err(Error::InvalidParams(format!("order must lie in [1, 6], got {}", self.order)));
        }
        Ok(())
    }

    pub fn with_points(mut self, n: usize) -> Self {
        self.points = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Independent generator for one named check: ChaCha8 keyed by `sha256(seed || name)`.
pub fn substream(seed: u64, check: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(check.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// Outcome of one check on one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub family: String,
    pub params: String,
    pub seed: u64,
    pub n_points: usize,
    pub max_rel_residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub citations: Vec<String>,
    /// Check-specific values; keys are kept sorted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(check: &str, family: &str, params: &str, seed: u64) -> Self {
        VerificationReport {
            check: check.into(),
            family: family.into(),
            params: params.into(),
            seed,
            n_points: 0,
            max_rel_residual: 0.0,
            tol: 0.0,
            pass: false,
            citations: Vec::new(),
            detail: BTreeMap::new(),
        }
    }

    /// Records `residual < tol` as the outcome.
    pub fn below(mut self, residual: f64, tol: f64, n_points: usize) -> Self {
        self.max_rel_residual = residual;
        self.tol = tol;
        self.n_points = n_points;
        self.pass = residual.is_finite() && residual < tol;
        self
    }

    /// Records `residual > tol` as the outcome (for checks that must stay away from zero).
    pub fn above(mut self, residual: f64, tol: f64, n_points: usize) -> Self {
        self.max_rel_residual = residual;
        self.tol = tol;
        self.n_points = n_points;
        self.pass = residual.is_finite() && residual > tol;
        self
    }

    pub fn and(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }

    pub fn cite(mut self, c: &str) -> Self {
        self.citations.push(c.into());
        self
    }

    pub fn detail(mut self, key: &str, v: impl Serialize) -> Self {
        self.detail.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
        self
    }

    /// A failed report carrying the error text.
    pub fn failed(mut self, err: &Error) -> Self {
        self.pass = false;
        self.max_rel_residual = f64::NAN;
        self.detail.insert("error".into(), Value::String(err.to_string()));
        self
    }
}

/// Everything one invocation produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: Vec<String>,
    pub config: RunConfig,
    pub reports: Vec<VerificationReport>,
    pub pass: bool,
}

impl ReportDocument {
    /// Sorts the reports by `(check, family, params)` and computes the overall verdict.
    pub fn new(command: Vec<String>, config: RunConfig, mut reports: Vec<VerificationReport>) -> Self {
        reports.sort_by(|a, b| (&a.check, &a.family, &a.params).cmp(&(&b.check, &b.family, &b.params)));
        let pass = reports.iter().all(|r| r.pass);
        ReportDocument { version: TOOL_VERSION.into(), command, config, reports, pass }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("projnorm {} :: {}\n", self.version, self.command.join(" "));
        for r in &self.reports {
            let p = if r.params.is_empty() { String::new() } else { format!(" [{}]", r.params) };
            out.push_str(&format!(
                "{:<4} {:<22} {:<10}{} residual={:.3e} tol={:.1e} n={}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.family,
                p,
                r.max_rel_residual,
                r.tol,
                r.n_points
            ));
            for (k, v) in &r.detail {
                out.push_str(&format!("       {k}: {v}\n"));
            }
        }
        out.push_str(if self.pass { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }

    /// 0 if every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn substreams_are_stable_and_distinct() {
        let a: u64 = substream(0, "x").gen();
        let b: u64 = substream(0, "x").gen();
        let c: u64 = substream(0, "y").gen();
        let d: u64 = substream(1, "x").gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn documents_sort_reports() {
        let cfg = RunConfig::default();
        let r = |c: &str, f: &str| VerificationReport::new(c, f, "", 0).below(0.0, 1.0, 1);
        let d = ReportDocument::new(vec![], cfg, vec![r("b", "A1"), r("a", "C8"), r("a", "A1")]);
        let keys: Vec<_> = d.reports.iter().map(|r| (r.check.as_str(), r.family.as_str())).collect();
        assert_eq!(keys, [("a", "A1"), ("a", "C8"), ("b", "A1")]);
        assert!(d.pass);
        assert_eq!(d.to_json(), d.clone().to_json());
    }

    #[test]
    fn config_bounds() {
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig { tol: 0.0, ..Default::default() }.validate().is_err());
        assert!(RunConfig { points: 0, ..Default::default() }.validate().is_err());
        assert!(RunConfig { order: 7, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!VerificationReport::new("c", "f", "", 0).below(f64::NAN, 1.0, 1).pass);
    }
}
