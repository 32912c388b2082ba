//! Check records, suite configuration and the suite runner.
//!
//! A [`Report`] is a flat list of [`Check`]s. Reports are deterministic for a fixed
//! [`SuiteConfig`]: checks run in parallel but are assembled in job order, and every
//! random choice is derived from the configured seed. Only `runtime_ms` varies between runs.

pub mod acceptance;
mod checks;

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::check_odd_prime;
use crate::error::{Error, Result};
use crate::lie::AlgebraKind;

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim_id: String,
    /// Short label of the statement being checked.
    pub reference: String,
    pub inputs: serde_json::Value,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub runtime_ms: u64,
}

/// What a check computed, before timing is attached.
pub(crate) struct Outcome {
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Outcome {
    pub fn equal<T: PartialEq + fmt::Debug>(expected: T, computed: T) -> Self {
        let pass = expected == computed;
        Outcome {
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
            pass,
        }
    }

    pub fn holds(expected: impl Into<String>, computed: impl Into<String>, pass: bool) -> Self {
        Outcome {
            expected: expected.into(),
            computed: computed.into(),
            pass,
        }
    }
}

impl Check {
    /// Runs `body`, recording an error as a failed check rather than propagating it.
    pub(crate) fn run(
        claim_id: &str,
        reference: &str,
        inputs: serde_json::Value,
        body: impl FnOnce() -> Result<Outcome>,
    ) -> Check {
        let start = Instant::now();
        let outcome = body().unwrap_or_else(|e| Outcome {
            expected: "no error".into(),
            computed: format!("error: {e}"),
            pass: false,
        });
        Check {
            claim_id: claim_id.into(),
            reference: reference.into(),
            inputs,
            expected: outcome.expected,
            computed: outcome.computed,
            pass: outcome.pass,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Axioms,
    Parity,
    Frames,
    Envelope,
    Walgebra,
    Hilbert,
    Meataxe,
    Levi,
    Bounds,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::Axioms,
        SuiteName::Parity,
        SuiteName::Frames,
        SuiteName::Envelope,
        SuiteName::Walgebra,
        SuiteName::Hilbert,
        SuiteName::Meataxe,
        SuiteName::Levi,
        SuiteName::Bounds,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Axioms => "axioms",
            SuiteName::Parity => "parity",
            SuiteName::Frames => "frames",
            SuiteName::Envelope => "envelope",
            SuiteName::Walgebra => "walgebra",
            SuiteName::Hilbert => "hilbert",
            SuiteName::Meataxe => "meataxe",
            SuiteName::Levi => "levi",
            SuiteName::Bounds => "bounds",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Nilpotents to run: every Jordan type of the natural representation, or an explicit list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nilpotents {
    Keyword(String),
    List(Vec<String>),
}

impl Default for Nilpotents {
    fn default() -> Self {
        Nilpotents::Keyword("enumerate".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub algebras: Vec<String>,
    pub primes: Vec<u64>,
    pub nilpotents: Nilpotents,
    pub suites: Vec<SuiteName>,
    /// Kazhdan-degree truncation for the Hilbert suite.
    pub cap_degree: usize,
    /// Largest module the splitting and W-algebra suites will build.
    pub cap_dim: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            algebras: vec!["osp(1|2)".into(), "gl(1|1)".into(), "gl(2|1)".into()],
            primes: vec![3, 5],
            nilpotents: Nilpotents::default(),
            suites: SuiteName::ALL.to_vec(),
            cap_degree: 8,
            cap_dim: 1000,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: SuiteConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// Primes must be odd (the constructions need `2` invertible) and caps positive.
    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            check_odd_prime(p).map_err(|_| {
                Error::Config(format!(
                    "p = {p} is not allowed: every supported family needs p odd (and prime)"
                ))
            })?;
        }
        if self.cap_degree == 0 || self.cap_dim == 0 {
            return Err(Error::Config("caps must be positive".into()));
        }
        for a in &self.algebras {
            a.parse::<AlgebraKind>()
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        if let Nilpotents::Keyword(k) = &self.nilpotents {
            if k != "enumerate" {
                return Err(Error::Config(format!(
                    "nilpotents must be \"enumerate\" or a list, not `{k}`"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Cases not run because they exceed a configured cap.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

impl Report {
    pub fn new(checks: Vec<Check>, skipped: Vec<String>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
            skipped,
        };
        Report { checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// The report with every `runtime_ms` zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.runtime_ms = 0);
        r
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record([
                    "claim_id",
                    "reference",
                    "inputs",
                    "expected",
                    "computed",
                    "pass",
                    "runtime_ms",
                ])
                .map_err(|e| Error::Io(e.to_string()))?;
                for c in &self.checks {
                    w.write_record([
                        &c.claim_id,
                        &c.reference,
                        &c.inputs.to_string(),
                        &c.expected,
                        &c.computed,
                        &c.pass.to_string(),
                        &c.runtime_ms.to_string(),
                    ])
                    .map_err(|e| Error::Io(e.to_string()))?;
                }
                String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
                    .map_err(|e| Error::Io(e.to_string()))
            }
            Format::Text => {
                let mut out = String::new();
                for c in &self.checks {
                    let verdict = if c.pass { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        out,
                        "{verdict} {} [{}] {}: computed {}",
                        c.claim_id, c.reference, c.inputs, c.computed
                    );
                    if !c.pass {
                        let _ = writeln!(out, "     expected {}", c.expected);
                    }
                }
                let s = &self.summary;
                let _ = writeln!(
                    out,
                    "{} checks, {} passed, {} failed",
                    s.total, s.passed, s.failed
                );
                for k in &s.skipped {
                    let _ = writeln!(out, "skipped: {k}");
                }
                Ok(out)
            }
        }
    }
}

pub use checks::run_suite;
