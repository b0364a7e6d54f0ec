//! Acceptance criteria, one line each. Criteria that cannot pass because the
//! printed data is inconsistent are listed in `KNOWN_FAILURES`; the run
//! succeeds only if exactly those fail, and only in the documented way.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use flagpos::repro::{self, ChecksReport, TableReport};
use flagpos::suites;

const SEED: u64 = 20240601;

/// Criterion number and the reason it is expected to fail.
const KNOWN_FAILURES: [(u32, &str); 3] = [
    (2, "table 1 row 3: printed heights violate positivity; cells are not interval polytopes"),
    (3, "table 2 row 4: printed heights violate the incidence relations"),
    (4, "worked quotient example: printed J_4 = 4562 makes the corrected variant fail (4561 passes)"),
];

struct Outcome {
    pass: bool,
    detail: String,
    /// The failure matches the documented defect and nothing else failed.
    documented: bool,
}

fn timed<F: FnOnce() -> Outcome>(limit: Duration, f: F) -> (Outcome, Duration, bool) {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    (out, took, took <= limit)
}

fn failed_checks(r: &ChecksReport) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| !c.pass && !c.informational)
        .map(|c| c.name.clone())
        .collect()
}

fn fvector_counts(r: &TableReport) -> Vec<(Vec<usize>, usize)> {
    let mut counts: Vec<(Vec<usize>, usize)> = Vec::new();
    for row in &r.rows {
        match counts.iter_mut().find(|(f, _)| *f == row.fvector) {
            Some((_, c)) => *c += 1,
            None => counts.push((row.fvector.clone(), 1)),
        }
    }
    counts
}

fn table(which: &str, bad_row: usize) -> Outcome {
    let g = repro::load_table(which).expect("golden table");
    let r = repro::reproduce_table(&g, 4, which == "table1").expect("reproduction runs");
    let failed: Vec<usize> = r.rows.iter().filter(|x| !x.pass).map(|x| x.row).collect();
    let detail = format!(
        "{}/{} rows, convention {:?}, distinct {}, f-vectors {:?}, failing rows {:?}",
        r.rows_passed,
        r.rows.len(),
        r.label_convention.as_deref().unwrap_or("none"),
        r.pairwise_distinct,
        fvector_counts(&r),
        failed
    );
    let documented = failed == [bad_row]
        && r.pairwise_distinct
        && r.label_convention.as_deref() == Some(g.label_convention.as_str());
    Outcome {
        pass: r.pass,
        detail,
        documented,
    }
}

fn checks(r: ChecksReport, expected_failures: &[&str]) -> Outcome {
    let failed = failed_checks(&r);
    let informational: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.informational)
        .map(|c| format!("{} = {}", c.name, c.pass))
        .collect();
    let mut detail = format!("{}/{} checks", r.checks.len() - failed.len(), r.checks.len());
    if !failed.is_empty() {
        detail += &format!(", failing {failed:?}");
    }
    if !informational.is_empty() {
        detail += &format!(", informational {informational:?}");
    }
    Outcome {
        pass: r.pass,
        documented: failed == expected_failures && r.checks.iter().filter(|c| c.informational).all(|c| c.pass),
        detail,
    }
}

fn suite_outcome(names: &[&str]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        let r = suites::run_suite(name, SEED, 1.0).expect("suite runs");
        pass &= r.pass;
        parts.push(format!(
            "{}: {} checked, {} violations{}",
            r.suite,
            r.checked,
            r.violations,
            if r.examples.is_empty() { String::new() } else { format!(" e.g. {}", r.examples[0]) }
        ));
    }
    Outcome {
        pass,
        detail: format!("seed {SEED}; {}", parts.join("; ")),
        documented: false,
    }
}

type Criterion = (u32, &'static str, Duration, Box<dyn FnOnce() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "figure 1 reproduction",
            Duration::from_secs(1),
            Box::new(|| checks(repro::reproduce_figure1().expect("runs"), &[])),
        ),
        (2, "table 1 reproduction", Duration::from_secs(60), Box::new(|| table("table1", 3))),
        (3, "table 2 reproduction", Duration::from_secs(60), Box::new(|| table("table2", 4))),
        (
            4,
            "worked examples (interval, quotient)",
            Duration::from_secs(1),
            Box::new(|| {
                let mut c = repro::interval_example_checks().expect("runs");
                c.extend(repro::quotient_example_checks().expect("runs"));
                let r = ChecksReport {
                    target: "worked examples".into(),
                    pass: c.iter().filter(|x| !x.informational).all(|x| x.pass),
                    checks: c,
                    elapsed_ms: 0,
                };
                checks(r, &["quotient: corrected variant passes"])
            }),
        ),
        (
            5,
            "counterexample regressions",
            Duration::from_secs(30),
            Box::new(|| {
                let (c1, s1) = repro::cantcomplete_witnesses().expect("runs");
                let (c2, s2) = repro::cantlift_witnesses().expect("runs");
                let r = repro::reproduce_examples().expect("runs");
                let notreal = r.checks.iter().find(|c| c.name.starts_with("notreal")).expect("present");
                Outcome {
                    pass: c1 == 0 && c2 == 0 && notreal.pass,
                    detail: format!(
                        "notreal rejected {}, cantcomplete {c1} of {s1}, cantlift {c2} of {s2}",
                        notreal.pass
                    ),
                    documented: false,
                }
            }),
        ),
        (
            6,
            "oracle equivalence",
            Duration::from_secs(600),
            Box::new(|| suite_outcome(&["oracle-pairs", "oracle-subdivisions"])),
        ),
        (
            7,
            "property suites",
            Duration::from_secs(600),
            Box::new(|| suite_outcome(&["eb", "cor-eb", "almost3term", "afflin", "duality", "speyer"])),
        ),
    ];

    let known: BTreeSet<u32> = KNOWN_FAILURES.iter().map(|&(k, _)| k).collect();
    let mut unexpected = Vec::new();
    for (k, name, limit, f) in criteria {
        let (out, took, in_time) = timed(limit, f);
        let pass = out.pass && in_time;
        let tag = if pass {
            "PASS"
        } else if known.contains(&k) && out.documented && in_time {
            "FAIL (known data defect)"
        } else {
            "FAIL"
        };
        println!(
            "criterion {k} [{name}]: {tag} in {:.2}s (limit {}s) - {}",
            took.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
        if pass == known.contains(&k) || (!pass && !(out.documented && in_time)) {
            unexpected.push(k);
        }
    }
    println!("criterion 8 [desk-scale exclusions]: SKIP (out of scope)");
    for (k, why) in KNOWN_FAILURES {
        println!("  known defect, criterion {k}: {why}");
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
