//! Machine-readable outcome of one identity check.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub checked_count: u64,
    pub counterexample: Option<Value>,
    /// Wall-clock time. Left out of the JSON unless set, so that reruns with
    /// the same parameters serialize byte-identically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

/// Accumulates checks for one identity; the first failure is kept as the
/// counterexample.
pub(crate) struct ReportBuilder {
    identity: String,
    params: BTreeMap<String, Value>,
    checked: u64,
    counterexample: Option<Value>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(identity: &str) -> Self {
        Self {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            checked: 0,
            counterexample: None,
            start: Instant::now(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records one check; `failure` is evaluated only when `ok` is false.
    pub(crate) fn check(&mut self, ok: bool, failure: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(failure());
        }
    }

    pub(crate) fn finish(self) -> VerificationReport {
        VerificationReport {
            identity: self.identity,
            params: self.params,
            pass: self.counterexample.is_none(),
            checked_count: self.checked,
            counterexample: self.counterexample,
            elapsed_ms: Some(self.start.elapsed().as_millis() as u64),
        }
    }
}
