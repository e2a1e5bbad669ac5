//! Pass/fail checks of the exact identities and constant-one inequalities of
//! the calculus, with measured metrics.
//!
//! Every check draws its randomness from a ChaCha stream keyed by the suite
//! seed and the check's registry position, so a single check reruns
//! identically in isolation. A report passes when `metric ≤ threshold`;
//! report-only measurements carry no threshold.

pub mod checks;
pub mod sampling;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::magnetic::MagneticPotential;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Registry entry that produced the report.
    pub check: String,
    /// The measured quantity.
    pub name: String,
    pub metric: f64,
    /// `None` for report-only measurements.
    pub threshold: Option<f64>,
    pub passed: bool,
    pub context: Map<String, Value>,
}

impl CheckReport {
    pub fn asserted(check: &str, name: &str, metric: f64, threshold: f64, context: Map<String, Value>) -> Self {
        Self {
            check: check.into(),
            name: name.into(),
            metric,
            threshold: Some(threshold),
            passed: metric.is_finite() && metric <= threshold,
            context,
        }
    }

    pub fn report_only(check: &str, name: &str, metric: f64, context: Map<String, Value>) -> Self {
        Self { check: check.into(), name: name.into(), metric, threshold: None, passed: metric.is_finite(), context }
    }

    pub fn is_asserted(&self) -> bool {
        self.threshold.is_some()
    }
}

/// Grid sizes, trial counts and overrides for a suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub epsilon: f64,
    /// Potential on `ℝ¹` used by the one-dimensional checks.
    pub potential: MagneticPotential,
    /// Orthogonality grid.
    pub n_large: usize,
    pub length_large: f64,
    /// Rank-one and reconstruction grid.
    pub n_medium: usize,
    pub length_medium: f64,
    /// Grid of the checks that materialize `Ξ × Ξ` objects.
    pub n_small: usize,
    pub length_small: f64,
    pub orthogonality_trials: usize,
    pub wigner_trials: usize,
    pub op_trials: usize,
    /// Replaces every threshold when set.
    pub tolerance: Option<f64>,
    /// Registry entries to run; all when `None`.
    pub only: Option<Vec<String>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            epsilon: 1.0,
            potential: MagneticPotential::zero(1),
            n_large: 64,
            length_large: 16.0,
            n_medium: 32,
            length_medium: 14.0,
            n_small: 16,
            length_small: 10.0,
            orthogonality_trials: 20,
            wigner_trials: 50,
            op_trials: 100,
            tolerance: None,
            only: None,
        }
    }
}

impl VerifyConfig {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "seed": self.seed,
            "epsilon": self.epsilon,
            "potential": self.potential.to_string(),
            "n_large": self.n_large,
            "length_large": self.length_large,
            "n_medium": self.n_medium,
            "length_medium": self.length_medium,
            "n_small": self.n_small,
            "length_small": self.length_small,
            "orthogonality_trials": self.orthogonality_trials,
            "wigner_trials": self.wigner_trials,
            "op_trials": self.op_trials,
            "tolerance": self.tolerance,
            "only": self.only,
        })
    }

    pub(crate) fn threshold(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

type CheckFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<Vec<CheckReport>>;

/// The registry, in report order.
pub const CHECKS: &[(&str, CheckFn)] = &[
    ("orthogonality", checks::orthogonality),
    ("unitarity", checks::unitarity),
    ("rank_one", checks::rank_one),
    ("reconstruction", checks::reconstruction),
    ("kernel", checks::kernel),
    ("factorization", checks::factorization),
    ("wigner_bound", checks::wigner_bound),
    ("op_bounds", checks::op_bounds),
    ("magnetic_formula", checks::magnetic_formula),
    ("gauge", checks::gauge),
    ("symbolic", checks::symbolic),
    ("heisenberg", checks::heisenberg),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Reports of one suite run plus wall times per check in seconds.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub timings: Vec<(String, f64)>,
}

impl SuiteOutcome {
    /// True when every asserted report passed.
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

/// Runs the selected checks concurrently; reports come back in registry order.
pub fn run_suite(config: &VerifyConfig) -> Result<SuiteOutcome> {
    let selected: Vec<(usize, &str, CheckFn)> = match &config.only {
        None => CHECKS.iter().enumerate().map(|(i, (n, f))| (i, *n, *f)).collect(),
        Some(names) => names
            .iter()
            .map(|name| {
                CHECKS
                    .iter()
                    .position(|(n, _)| n == name)
                    .map(|i| (i, CHECKS[i].0, CHECKS[i].1))
                    .ok_or_else(|| Error::UnknownCheck(name.clone()))
            })
            .collect::<Result<_>>()?,
    };
    let results: Vec<(String, Result<Vec<CheckReport>>, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&(i, name, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let mut rng = config.rng(i as u64);
                    let out = f(config, &mut rng);
                    (name.to_string(), out, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for (name, out, secs) in results {
        reports.extend(out?);
        timings.push((name, secs));
    }
    Ok(SuiteOutcome { reports, timings })
}

/// Runs a single registry entry.
pub fn run_check(config: &VerifyConfig, name: &str) -> Result<Vec<CheckReport>> {
    let cfg = VerifyConfig { only: Some(vec![name.to_string()]), ..config.clone() };
    Ok(run_suite(&cfg)?.reports)
}

pub const SUMMARY_HEADER: &str = "check,name,metric,threshold,passed";

fn fmt_f64(v: f64) -> String {
    // shortest round-trip form
    format!("{v:?}")
}

pub fn summary_csv(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for r in reports {
        let t = r.threshold.map(fmt_f64).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", r.check, r.name, fmt_f64(r.metric), t, r.passed).expect("string write");
    }
    out
}

pub fn reports_jsonl(reports: &[CheckReport]) -> Result<String> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

/// Writes `summary.csv` and `reports.jsonl` into `dir`.
pub fn emit_reports(reports: &[CheckReport], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::File::create(dir.join("summary.csv"))?.write_all(summary_csv(reports).as_bytes())?;
    std::fs::File::create(dir.join("reports.jsonl"))?.write_all(reports_jsonl(reports)?.as_bytes())?;
    Ok(())
}
