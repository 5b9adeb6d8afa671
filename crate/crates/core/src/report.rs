// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: u32 = 1;

/// Outcome of a theorem suite or window sweep.
///
/// Everything except `elapsed_ms` is a function of the suite name, seed and
/// limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub cases: u64,
    pub failures: u64,
    /// Counterexample from the lowest-numbered failing case.
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        SuiteReport {
            schema: REPORT_SCHEMA,
            suite: suite.into(),
            seed,
            cases: 0,
            failures: 0,
            witness: None,
            elapsed_ms: 0,
            notes: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Counts one case; the first failure's witness is kept.
    pub fn record(&mut self, failure: Option<Value>) {
        self.cases += 1;
        if let Some(w) = failure {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(w);
            }
        }
    }

    /// Folds in another report's counts; its witness is used only if this
    /// report has none yet.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        for (k, v) in other.notes {
            self.notes.entry(k).or_insert(v);
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.notes.insert(key.into(), value.into());
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed_ms = d.as_millis() as u64;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `elapsed_ms` zeroed, for reproducibility comparisons.
    pub fn to_json_without_elapsed(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = 0;
        copy.to_json()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: {} cases, {} failures (seed {}, {} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.cases,
            self.failures,
            self.seed,
            self.elapsed_ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn witness_is_first_failure() {
        let mut r = SuiteReport::new("demo", 0);
        r.record(None);
        r.record(Some(json!(1)));
        r.record(Some(json!(2)));
        assert_eq!(r.cases, 3);
        assert_eq!(r.failures, 2);
        assert_eq!(r.witness, Some(json!(1)));
        assert!(!r.passed());
        assert!(r.to_json().contains("\"schema\": 1"));
    }
}
