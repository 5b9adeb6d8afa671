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

//! Named theorem suites: seeded random and exhaustive case generation over
//! the deciders, reported as [`SuiteReport`]s.

mod algebra;
mod digital;
pub mod gen;
mod real;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::digital::DEFAULT_ENUMERATION_LIMIT;
use crate::error::{Result, ShyError};
use crate::report::SuiteReport;

pub use algebra::check_wedge_lemma_exhaustive;
pub use digital::three_star;
pub use real::{half_turn, sine_like, tent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteName {
    OracleEquivalence,
    MonotoneShy,
    CircleConstant,
    KhalimskyQ,
    Composition,
    Factor,
    Wedge,
    CutPoint,
    Pi1Degree,
    EmbeddingExample,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::OracleEquivalence,
        SuiteName::MonotoneShy,
        SuiteName::CircleConstant,
        SuiteName::KhalimskyQ,
        SuiteName::Composition,
        SuiteName::Factor,
        SuiteName::Wedge,
        SuiteName::CutPoint,
        SuiteName::Pi1Degree,
        SuiteName::EmbeddingExample,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::OracleEquivalence => "oracle-equivalence",
            SuiteName::MonotoneShy => "monotone-shy",
            SuiteName::CircleConstant => "circle-constant",
            SuiteName::KhalimskyQ => "khalimsky-q",
            SuiteName::Composition => "composition",
            SuiteName::Factor => "factor",
            SuiteName::Wedge => "wedge",
            SuiteName::CutPoint => "cut-point",
            SuiteName::Pi1Degree => "pi1-degree",
            SuiteName::EmbeddingExample => "embedding-example",
        }
    }

    /// Random cases drawn when `--cases` is not given.
    pub fn default_cases(&self) -> u64 {
        match self {
            SuiteName::OracleEquivalence | SuiteName::MonotoneShy | SuiteName::CircleConstant => 10_000,
            SuiteName::Composition | SuiteName::Factor | SuiteName::Wedge => 5_000,
            SuiteName::CutPoint => 1_000,
            _ => 0,
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = ShyError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| {
                ShyError::Domain(format!("unknown suite `{s}`; valid names: {}", Self::valid_names()))
            })
    }
}

/// Limits and seed for a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random cases; `None` uses the suite's default.
    pub cases: Option<u64>,
    pub exhaustive: bool,
    /// Enumeration limit for the brute-force oracles.
    pub oracle_limit: usize,
    /// Khalimsky window half-width.
    pub window: Option<u32>,
    /// Khalimsky box dimension (1 = the line only).
    pub dim: Option<usize>,
    /// Largest cycle length for the degree suite.
    pub max_cycle: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            cases: None,
            exhaustive: false,
            oracle_limit: DEFAULT_ENUMERATION_LIMIT,
            window: None,
            dim: None,
            max_cycle: None,
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        SuiteConfig {
            seed,
            ..Self::default()
        }
    }

    fn cases_for(&self, name: SuiteName) -> u64 {
        self.cases.unwrap_or_else(|| name.default_cases())
    }
}

/// What one case found: an optional failure witness plus tags that are
/// tallied into the report notes.
#[derive(Debug, Default)]
pub(crate) struct CaseOutcome {
    pub failure: Option<Value>,
    pub tags: Vec<&'static str>,
}

impl CaseOutcome {
    pub fn pass() -> Self {
        CaseOutcome::default()
    }

    pub fn fail(witness: Value) -> Self {
        CaseOutcome {
            failure: Some(witness),
            tags: Vec::new(),
        }
    }

    pub fn tag(mut self, t: &'static str) -> Self {
        self.tags.push(t);
        self
    }
}

#[derive(Debug, Default)]
struct ChunkSummary {
    cases: u64,
    failures: u64,
    witness: Option<Value>,
    tags: BTreeMap<&'static str, u64>,
}

fn summarize(outcomes: impl Iterator<Item = CaseOutcome>) -> ChunkSummary {
    let mut s = ChunkSummary::default();
    for o in outcomes {
        s.cases += 1;
        for t in o.tags {
            *s.tags.entry(t).or_default() += 1;
        }
        if let Some(w) = o.failure {
            s.failures += 1;
            if s.witness.is_none() {
                s.witness = Some(w);
            }
        }
    }
    s
}

const CHUNK: u64 = 1024;

/// Evaluates cases `0..count` in parallel chunks and folds them into `report`
/// in index order, so the kept witness is always the lowest failing case.
/// Tags are counted under `notes["<prefix>.<tag>"]`.
pub(crate) fn run_indexed(
    report: &mut SuiteReport,
    prefix: &str,
    count: u64,
    case: impl Fn(u64) -> CaseOutcome + Sync,
) {
    let chunks = count.div_ceil(CHUNK);
    let summaries: Vec<ChunkSummary> = (0..chunks)
        .into_par_iter()
        .map(|c| summarize((c * CHUNK..((c + 1) * CHUNK).min(count)).map(&case)))
        .collect();
    let mut counts: BTreeMap<&'static str, u64> = BTreeMap::new();
    for s in summaries {
        report.cases += s.cases;
        report.failures += s.failures;
        if report.witness.is_none() {
            report.witness = s.witness;
        }
        for (t, c) in s.tags {
            *counts.entry(t).or_default() += c;
        }
    }
    for (t, c) in counts {
        let key = format!("{prefix}.{t}");
        let prev = report.notes.get(&key).and_then(Value::as_u64).unwrap_or(0);
        report.note(key, prev + c);
    }
}

/// Seeded random cases; case `i` draws from its own stream.
pub(crate) fn run_random(
    report: &mut SuiteReport,
    prefix: &str,
    seed: u64,
    count: u64,
    case: impl Fn(&mut ChaCha8Rng) -> CaseOutcome + Sync,
) {
    run_indexed(report, prefix, count, |i| {
        let mut rng = gen::case_rng(seed, i);
        let mut out = case(&mut rng);
        if let Some(Value::Object(m)) = out.failure.as_mut() {
            m.insert("case".into(), Value::from(i));
        }
        out
    });
}

/// Runs a named suite. Errors only for invalid limits.
pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new(name.as_str(), config.seed);
    let cases = config.cases_for(name);
    match name {
        SuiteName::OracleEquivalence => digital::oracle_equivalence(&mut report, config, cases)?,
        SuiteName::CutPoint => digital::cut_point(&mut report, config, cases)?,
        SuiteName::Pi1Degree => digital::pi1_degree(&mut report, config)?,
        SuiteName::MonotoneShy => real::monotone_shy(&mut report, config, cases)?,
        SuiteName::CircleConstant => real::circle_constant(&mut report, config, cases)?,
        SuiteName::KhalimskyQ => real::khalimsky_q(&mut report, config)?,
        SuiteName::EmbeddingExample => real::embedding_example(&mut report, config)?,
        SuiteName::Composition => algebra::composition(&mut report, config, cases)?,
        SuiteName::Factor => algebra::factor(&mut report, config, cases)?,
        SuiteName::Wedge => algebra::wedge(&mut report, config, cases)?,
    }
    report.set_elapsed(start.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        let err = "nope".parse::<SuiteName>().unwrap_err();
        assert!(err.to_string().contains("oracle-equivalence"));
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = SuiteConfig {
            cases: Some(200),
            seed: 11,
            ..SuiteConfig::default()
        };
        for name in [SuiteName::Composition, SuiteName::MonotoneShy] {
            let a = run_suite(name, &cfg).unwrap();
            let b = run_suite(name, &cfg).unwrap();
            assert_eq!(a.to_json_without_elapsed(), b.to_json_without_elapsed());
        }
    }
}
