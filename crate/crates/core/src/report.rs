//! Machine-readable outcome of a verification run.

use serde::Serialize;
use serde_json::Value;

use crate::tolerance::ToleranceSet;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of checking one identity on a finite set of witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: ToleranceSet,
    pub inputs: Value,
    pub witnesses_checked: usize,
    pub violations: Vec<Value>,
    /// Free-form measurements (worst errors, timings, estimates).
    pub metrics: serde_json::Map<String, Value>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(theorem: &str, inputs: Value) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            version: VERSION.to_string(),
            seed: None,
            tolerances: ToleranceSet::current(),
            inputs,
            witnesses_checked: 0,
            violations: Vec::new(),
            metrics: serde_json::Map::new(),
            pass: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Records one witness; a failing witness is kept as a violation.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.witnesses_checked += 1;
        if !ok {
            self.violations.push(witness());
            self.pass = false;
        }
    }

    /// Records a failure that is not tied to a witness.
    pub fn fail(&mut self, violation: Value) {
        self.violations.push(violation);
        self.pass = false;
    }

    pub fn metric(&mut self, key: &str, value: impl Into<Value>) {
        self.metrics.insert(key.to_string(), value.into());
    }

    /// Keeps the running maximum of a numeric metric.
    pub fn metric_max(&mut self, key: &str, value: f64) {
        let cur = self.metrics.get(key).and_then(Value::as_f64).unwrap_or(f64::NEG_INFINITY);
        if value > cur || !self.metrics.contains_key(key) {
            self.metrics.insert(key.to_string(), Value::from(value));
        }
    }

    /// Keeps the running minimum of a numeric metric.
    pub fn metric_min(&mut self, key: &str, value: f64) {
        let cur = self.metrics.get(key).and_then(Value::as_f64).unwrap_or(f64::INFINITY);
        if value < cur || !self.metrics.contains_key(key) {
            self.metrics.insert(key.to_string(), Value::from(value));
        }
    }

    /// Merges another report's witnesses and violations into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.witnesses_checked += other.witnesses_checked;
        self.pass &= other.pass;
        self.violations.extend(other.violations);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn failing_check_flips_pass() {
        let mut r = VerificationReport::new("demo", json!({}));
        r.check(true, || json!(1));
        assert!(r.pass);
        r.check(false, || json!({"x": 2}));
        assert!(!r.pass);
        assert_eq!(r.witnesses_checked, 2);
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn running_max() {
        let mut r = VerificationReport::new("demo", json!(null));
        r.metric_max("err", 1e-3);
        r.metric_max("err", 1e-5);
        assert_eq!(r.metrics["err"].as_f64(), Some(1e-3));
    }
}
