//! Runs every acceptance criterion at its stated tolerance and prints one
//! line per criterion.

use std::time::{Duration, Instant};

use magweyl::verify::{run_check, CheckReport, VerifyConfig};

struct Criterion {
    id: usize,
    title: &'static str,
    checks: &'static [&'static str],
    /// (report name prefix, tolerance); every report in `checks` whose name
    /// starts with a listed prefix must meet that tolerance.
    limits: &'static [(&'static str, f64)],
    runtime: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "orthogonality relations, d=1 N=64",
        checks: &["orthogonality"],
        limits: &[("relative_defect", 1e-6)],
        runtime: Some(Duration::from_secs(10)),
    },
    Criterion {
        id: 2,
        title: "quantization map unitary and full rank, N=16",
        checks: &["unitarity"],
        limits: &[("gram_deviation", 1e-6), ("rank_deficit", 0.0)],
        runtime: Some(Duration::from_secs(30)),
    },
    Criterion {
        id: 3,
        title: "rank-one and reconstruction formulas, N=32",
        checks: &["rank_one", "reconstruction"],
        limits: &[("relative_hs_error", 1e-6), ("unit_window_error", 1e-6), ("mixed_window_error", 1e-6)],
        runtime: None,
    },
    Criterion {
        id: 4,
        title: "symbol ambiguity factorization, N=16",
        checks: &["factorization"],
        limits: &[("pointwise_error", 1e-6)],
        runtime: None,
    },
    Criterion {
        id: 5,
        title: "cross-Wigner continuity with constant 1",
        checks: &["wigner_bound"],
        limits: &[
            ("max_ratio (1,inf;2,2;2,2)", 1.001),
            ("max_ratio (2,2;2,2;2,2)", 1.001),
            ("equality_defect (2,2;2,2;2,2)", 1e-3),
        ],
        runtime: None,
    },
    Criterion {
        id: 6,
        title: "M(inf,1) operator and M(1,1) trace-class bounds",
        checks: &["op_bounds"],
        limits: &[("operator_norm_ratio", 1.001), ("trace_norm_ratio", 1.001)],
        runtime: Some(Duration::from_secs(300)),
    },
    Criterion {
        id: 7,
        title: "explicit magnetic formula against direct definition",
        checks: &["magnetic_formula"],
        limits: &[("relative_error", 1e-6)],
        runtime: None,
    },
    Criterion {
        id: 8,
        title: "gauge covariance and field-only Moyal product, d=2 N=8",
        checks: &["gauge"],
        limits: &[("intertwining_defect", 1e-3), ("moyal_field_only_defect", 1e-3)],
        runtime: None,
    },
    Criterion {
        id: 9,
        title: "exact symbolic identities",
        checks: &["symbolic"],
        limits: &[("failed_identities", 0.0)],
        runtime: Some(Duration::from_secs(10)),
    },
    Criterion {
        id: 10,
        title: "Heisenberg quadrature orthogonality and dim F_G",
        checks: &["heisenberg"],
        limits: &[("orthogonality_relative_error", 0.05), ("fg_dimension_defect", 0.0)],
        runtime: None,
    },
];

fn evaluate(c: &Criterion, reports: &[CheckReport], elapsed: Duration) -> Result<String, String> {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (prefix, tol) in c.limits {
        let matching: Vec<&CheckReport> = reports.iter().filter(|r| r.name.starts_with(prefix)).collect();
        if matching.is_empty() {
            failures.push(format!("no report named {prefix}"));
        }
        for r in matching {
            let ok = r.metric.is_finite() && r.metric <= *tol;
            let line = format!("{} = {:.3e} (<= {:e})", r.name, r.metric, tol);
            if ok {
                notes.push(line);
            } else {
                failures.push(line);
            }
        }
    }
    if let Some(limit) = c.runtime {
        let line = format!("runtime {:.2}s (<= {}s)", elapsed.as_secs_f64(), limit.as_secs());
        if elapsed <= limit {
            notes.push(line);
        } else {
            failures.push(line);
        }
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let mut reports = Vec::new();
        let mut error = None;
        for name in c.checks {
            match run_check(&cfg, name) {
                Ok(r) => reports.extend(r),
                Err(e) => error = Some(format!("{name}: {e}")),
            }
        }
        let elapsed = start.elapsed();
        let verdict = match error {
            Some(e) => Err(e),
            None => evaluate(c, &reports, elapsed),
        };
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {}: {}", c.id, c.title, detail),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {}: {}", c.id, c.title, detail);
                failed.push(c.id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", CRITERIA.len());
}
