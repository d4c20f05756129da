//! Structured run documents: one verification run with its configuration and results.
//!
//! Layout of `hopf-twist-report/1`:
//!
//! ```text
//! { "format": "hopf-twist-report/1",
//!   "versions": { "hopf-twist": "0.1.0" },
//!   "instance": { "name", "source", "parameters", "provenance" },
//!   "config": { "gamma", "sigma", "suites", "max_degree", "samples", "seed" },
//!   "passed": bool,
//!   "results": [ { "suite", "passed", "reports": [Report] } ],
//!   "timings": { "<suite>": microseconds } }
//! ```
//!
//! Everything except `timings` is a function of the configuration alone.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::GaloisInstance;
use crate::report::Report;
use crate::suites::{run_suite, Suite, SuiteConfig, Target};

pub const REPORT_FORMAT: &str = "hopf-twist-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub name: String,
    /// `catalog` or the path of an instance file.
    pub source: String,
    pub parameters: BTreeMap<String, i64>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub gamma: Option<String>,
    pub sigma: Option<String>,
    pub suites: Vec<Suite>,
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            max_degree: self.max_degree,
            samples: self.samples,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree == 0 || self.samples == 0 {
            return Err(Error::BadParams("degree bound and sample count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    pub reports: Vec<Report>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunDocument {
    pub format: String,
    pub versions: BTreeMap<String, String>,
    pub instance: InstanceRecord,
    pub config: RunConfig,
    pub passed: bool,
    pub results: Vec<SuiteResult>,
    #[serde(default)]
    pub timings: BTreeMap<String, u64>,
}

impl RunDocument {
    pub fn witnesses(&self) -> impl Iterator<Item = &crate::report::Witness> {
        self.results.iter().flat_map(|r| r.reports.iter().flat_map(|x| x.witnesses.iter()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: RunDocument = serde_json::from_str(s)?;
        if doc.format != REPORT_FORMAT {
            return Err(Error::Parse(format!("expected format {REPORT_FORMAT}, found {}", doc.format)));
        }
        Ok(doc)
    }
}

/// Runs the configured suites in order.
pub fn run(inst: &GaloisInstance, record: InstanceRecord, cfg: RunConfig) -> Result<RunDocument> {
    cfg.validate()?;
    let target = Target::named(inst, cfg.gamma.as_deref(), cfg.sigma.as_deref())?;
    let sc = cfg.suite_config();
    let mut results = Vec::new();
    let mut timings = BTreeMap::new();
    for &suite in &cfg.suites {
        let t0 = Instant::now();
        let reports = run_suite(&target, suite, &sc);
        timings.insert(suite.name().to_string(), t0.elapsed().as_micros() as u64);
        results.push(SuiteResult {
            suite,
            passed: reports.iter().all(Report::passed),
            reports,
        });
    }
    Ok(RunDocument {
        format: REPORT_FORMAT.to_string(),
        versions: BTreeMap::from([("hopf-twist".to_string(), env!("CARGO_PKG_VERSION").to_string())]),
        instance: record,
        passed: results.iter().all(|r| r.passed),
        config: cfg,
        results,
        timings,
    })
}

impl fmt::Display for RunDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "instance {} ({})", self.instance.name, self.instance.source)?;
        writeln!(
            f,
            "gamma {}  sigma {}  max-degree {}  samples {}  seed {}",
            c.gamma.as_deref().unwrap_or("-"),
            c.sigma.as_deref().unwrap_or("-"),
            c.max_degree,
            c.samples,
            c.seed
        )?;
        for r in &self.results {
            writeln!(f, "[{}] {}", if r.passed { "pass" } else { "FAIL" }, r.suite)?;
            for rep in &r.reports {
                for line in rep.to_string().lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        write!(f, "{}", if self.passed { "all suites passed" } else { "some suites failed" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn record(name: &str) -> InstanceRecord {
        InstanceRecord {
            name: name.into(),
            source: "catalog".into(),
            parameters: BTreeMap::new(),
            provenance: String::new(),
        }
    }

    #[test]
    fn round_trip_and_determinism() {
        let inst = catalog::finite_group_galois(2).unwrap();
        let cfg = RunConfig {
            gamma: Some("cyclic_table_1".into()),
            sigma: None,
            suites: Suite::ALL.to_vec(),
            max_degree: 2,
            samples: 50,
            seed: 3,
        };
        let a = run(&inst, record("finite_group_galois"), cfg.clone()).unwrap();
        let b = run(&inst, record("finite_group_galois"), cfg).unwrap();
        assert!(a.passed);
        assert_eq!(a.results, b.results);
        assert_eq!(RunDocument::from_json(&a.to_json().unwrap()).unwrap(), a);
    }

    #[test]
    fn failing_run_has_witness() {
        let inst = catalog::finite_function_galois(2, 2).unwrap();
        let cfg = RunConfig {
            gamma: Some("corrupted_table".into()),
            sigma: None,
            suites: vec![Suite::Cocycle],
            max_degree: 2,
            samples: 50,
            seed: 3,
        };
        let doc = run(&inst, record("finite_function_galois"), cfg).unwrap();
        assert!(!doc.passed);
        assert!(doc.witnesses().next().is_some());
    }

    #[test]
    fn zero_bounds_rejected() {
        let inst = catalog::finite_group_galois(2).unwrap();
        let cfg = RunConfig {
            gamma: None,
            sigma: None,
            suites: vec![Suite::Axioms],
            max_degree: 0,
            samples: 1,
            seed: 0,
        };
        assert!(run(&inst, record("x"), cfg).is_err());
    }
}
