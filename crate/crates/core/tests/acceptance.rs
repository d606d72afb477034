//! The acceptance criteria, run in order with one PASS/FAIL line each.
//!
//! Every value is an exact integer identity, so nothing is compared with a
//! tolerance. A criterion with a runtime budget also fails when it overruns.

use std::io::Write;
use std::time::{Duration, Instant};

use gchar_core::suites;
use gchar_core::Bounds;

struct Criterion {
    number: usize,
    what: &'static str,
    suites: &'static [&'static str],
    budget: Option<Duration>,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        what: "chi_G over k[x,y]/(x^2)",
        suites: &["exdim1"],
        budget: secs(30),
    },
    Criterion {
        number: 2,
        what: "closed forms for chi_G(k)",
        suites: &["series", "chici"],
        budget: secs(1),
    },
    Criterion {
        number: 3,
        what: "engine Betti numbers of k match the Poincare series",
        suites: &["engine-series"],
        budget: secs(120),
    },
    Criterion {
        number: 4,
        what: "beta^G(k) by two routes",
        suites: &["gbetti-k"],
        budget: None,
    },
    Criterion {
        number: 5,
        what: "minimal generators of Hom(K_d, R)",
        suites: &["musyz"],
        budget: None,
    },
    Criterion {
        number: 6,
        what: "extremal values of chi_G on sampled modules",
        suites: &["chirank"],
        budget: None,
    },
    Criterion {
        number: 7,
        what: "certified non-proper G-resolution",
        suites: &["notproper"],
        budget: None,
    },
    Criterion {
        number: 8,
        what: "chi_G(M/sM) = chi_G(M) - f-rank(M)",
        suites: &["totrefreg"],
        budget: None,
    },
    Criterion {
        number: 9,
        what: "beta^G under a regular quotient",
        suites: &["basechange"],
        budget: None,
    },
    Criterion {
        number: 10,
        what: "epsilon_i and tau_i over the cusp and the node",
        suites: &["invariants"],
        budget: None,
    },
    Criterion {
        number: 11,
        what: "kernel identities on random inputs",
        suites: &["kernel"],
        budget: secs(60),
    },
];

#[test]
fn acceptance() {
    let bounds = Bounds::default();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let mut checks = 0;
        let mut passed = 0;
        let mut problems = Vec::new();
        for name in c.suites {
            match suites::run(name, &bounds, 0) {
                Ok(report) => {
                    checks += report.checks.len();
                    passed += report.checks.iter().filter(|k| k.pass).count();
                    if report.checks.is_empty() {
                        problems.push(format!("{name}: no checks ran"));
                    }
                    problems.extend(report.failures().map(|k| format!("{name}: {k}")));
                }
                Err(e) => problems.push(format!("{name}: {e}")),
            }
        }
        let elapsed = start.elapsed();
        if let Some(b) = c.budget {
            if elapsed > b {
                problems.push(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), b.as_secs()));
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        // Written to the stdout handle directly so the lines survive output capture.
        let mut out = std::io::stdout().lock();
        let _ = writeln!(
            out,
            "{verdict} criterion {:>2}: {} [{}] {passed}/{checks} checks, {:.2} s",
            c.number,
            c.what,
            c.suites.join(", "),
            elapsed.as_secs_f64()
        );
        for p in &problems {
            let _ = writeln!(out, "    {p}");
        }
        if !problems.is_empty() {
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
