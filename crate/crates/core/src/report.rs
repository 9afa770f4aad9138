//! Verification reports: what was checked, how, and what failed.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

/// How a suite compares the two sides of an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Method {
    /// Exact equality of rational functions.
    Symbolic,
    /// Exact evaluation at `points` seeded random points satisfying the
    /// ring relation (or, for sampled suites, `points` random instances).
    Randomized { points: usize, seed: u64 },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Symbolic => write!(f, "symbolic"),
            Method::Randomized { points, seed } => write!(f, "randomized(points={points}, seed={seed})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub id: String,
    pub witness: String,
}

/// Outcome of one verification suite. The verdict is "pass" exactly when
/// `failures` is empty.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub method: Method,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    suite: &'a str,
    params: &'a BTreeMap<String, String>,
    mode: Method,
    checks_run: usize,
    failures: &'a [Failure],
    elapsed_ms: Option<u64>,
    verdict: &'static str,
}

/// Witnesses longer than this are cut, so reports stay readable.
const MAX_WITNESS_LEN: usize = 400;

impl VerificationReport {
    pub fn new(suite: impl Into<String>, method: Method) -> Self {
        VerificationReport {
            suite: suite.into(),
            params: BTreeMap::new(),
            method,
            checks_run: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Counts one check; on failure the witness is rendered lazily.
    pub fn record(&mut self, id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.checks_run += 1;
        if !ok {
            let mut witness = witness();
            if witness.len() > MAX_WITNESS_LEN {
                let mut cut = MAX_WITNESS_LEN;
                while !witness.is_char_boundary(cut) {
                    cut -= 1;
                }
                witness.truncate(cut);
                witness.push_str("...");
            }
            self.failures.push(Failure { id: id.into(), witness });
        }
    }

    /// Counts `count` checks that were certified together.
    pub fn record_many(&mut self, count: usize) {
        self.checks_run += count;
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.record(id, false, || witness.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// Folds a sub-suite in, prefixing its failure ids.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks_run += other.checks_run;
        self.elapsed += other.elapsed;
        for f in other.failures {
            self.failures.push(Failure { id: format!("{}: {}", other.suite, f.id), witness: f.witness });
        }
    }

    /// Runs `body` and records its wall time.
    pub fn timed(mut self, body: impl FnOnce(&mut Self)) -> Self {
        let start = Instant::now();
        body(&mut self);
        self.elapsed = start.elapsed();
        self
    }

    /// JSON with the stable field set. `elapsed_ms` is `null` unless
    /// `include_timing`, which keeps reruns byte-identical by default.
    pub fn to_json(&self, include_timing: bool) -> String {
        let report = JsonReport {
            suite: &self.suite,
            params: &self.params,
            mode: self.method,
            checks_run: self.checks_run,
            failures: &self.failures,
            elapsed_ms: include_timing.then_some(self.elapsed.as_millis() as u64),
            verdict: self.verdict(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "suite: {} [{}]", self.suite, params.join(", "))?;
        writeln!(f, "mode: {}", self.method)?;
        writeln!(
            f,
            "checks: {} run, {} passed, {} failed",
            self.checks_run,
            self.checks_run - self.failures.len().min(self.checks_run),
            self.failures.len()
        )?;
        if let Some(first) = self.failures.first() {
            writeln!(f, "first counterexample: {} ({})", first.id, first.witness)?;
        }
        writeln!(f, "elapsed: {} ms", self.elapsed.as_millis())?;
        write!(f, "verdict: {}", self.verdict())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_failures() {
        let mut r = VerificationReport::new("demo", Method::Symbolic).with_param("n", 3);
        r.record("a", true, || unreachable!());
        assert!(r.passed());
        r.record("b", false, || "x".repeat(1000));
        assert!(!r.passed());
        assert_eq!(r.checks_run, 2);
        assert!(r.failures[0].witness.len() <= MAX_WITNESS_LEN + 3);
    }

    #[test]
    fn json_has_stable_fields() {
        let r = VerificationReport::new("demo", Method::Randomized { points: 2, seed: 7 });
        let v: serde_json::Value = serde_json::from_str(&r.to_json(false)).unwrap();
        for key in ["suite", "params", "mode", "checks_run", "failures", "elapsed_ms", "verdict"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["elapsed_ms"].is_null());
        assert_eq!(v["mode"]["kind"], "randomized");
        assert_eq!(v["verdict"], "pass");
    }
}
